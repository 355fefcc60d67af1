# Linear recurrences and constant coefficient ODEs
#
# y_{n+q} + ... = f_n is solved with X^n mod D, and D(d/dt) y = f with
# exp(tX) mod D.  The last remainder coefficient is the impulse response.

import numpy as np

from remcalc import (
    ExpPolyFunction,
    ODEProblem,
    RecurrenceProblem,
    SampledFunction,
    X,
    euler_solve,
    g_discrete,
    ode_residual_check,
    ode_solve_collet,
    recurrence_solve,
)

# Fibonacci from X^2 - X - 1
fib = RecurrenceProblem(X**2 - X - 1, (0, 1))
print(recurrence_solve(fib, 12).real.astype(int))

# X^n mod D jumps straight to large n
print("F_70 =", int(round(g_discrete(70, X**2 - X - 1).coeffs[1].real)), "(190392490709135)")

# A forced recurrence y_{n+1} = 2 y_n + 1
prob = RecurrenceProblem(X - 2, (0,), forcing=(1,) * 10)
print(recurrence_solve(prob, 9).real)

# A damped oscillator y'' + 0.4 y' + 4 y = cos(3t), forcing written as
# exponentials so the convolution is done in closed form
cos3 = ExpPolyFunction(((0.5, 0, 3j), (0.5, 0, -3j)))
osc = ODEProblem(X**2 + 0.4 * X + 4, (1.0, 0.0), forcing=cos3)
ts = np.linspace(0, 10, 6)
y_exact = ode_solve_collet(osc, ts, method="exact")
y_quad = ode_solve_collet(osc, ts, method="quadrature")
print(np.round(y_exact.real, 10))
print("exact vs quadrature:", np.max(np.abs(y_exact - y_quad)))
print("residual:", ode_residual_check(osc, lambda t: ode_solve_collet(osc, t), ts[1:]))

# Forcing known only at samples, linearly interpolated in between
times = np.linspace(0, 5, 51)
sampled = SampledFunction(times, np.sin(times))
p2 = ODEProblem(X + 1, (0.0,), forcing=sampled)
print("y(5) =", ode_solve_collet(p2, 5.0).real, "vs", (np.sin(5) - np.cos(5) + np.exp(-5)) / 2)

# A time varying linear system y' + (1 + t) A y = 0
A = np.array([[0.0, 1.0], [-1.0, 0.0]])
h = [ExpPolyFunction(), ExpPolyFunction(((1.0, 0, 0), (1.0, 1, 0)))]
y = euler_solve(h, A, [1.0, 0.0], None, 1.0)
s = 1.0 + 0.5
print("euler:", np.round(y.real, 12), "expected", np.round([np.cos(s), np.sin(s)], 12))
