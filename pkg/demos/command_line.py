# The remcalc command
#
# Every library operation is exposed as a subcommand that prints JSON.  Exit
# code 0 is success, 1 bad input, 2 numerical failure.

import json
import subprocess
import sys


def remcalc(*args):
    proc = subprocess.run([sys.executable, "-m", "remcalc", *args], capture_output=True, text=True)
    print("$ remcalc", " ".join(args), f"  [exit {proc.returncode}]")
    print(proc.stdout.rstrip())
    return proc


remcalc("divrem", "--dividend", "X^5", "--divisor", "(X-1)^2", "--pretty")
remcalc("partfrac", "--num", "1", "--den", "X*(X-1)")
remcalc("recurrence", "--D", "X^2-X-1", "--init", "[0,1]", "--T", "10", "--pretty")
remcalc("matexp", "--matrix", '{"order": 2, "entries": [[0,0],[-1,0],[1,0],[0,0]]}', "--t", "1.5707963267948966")
remcalc("minpoly", "--matrix", '{"order": 3, "entries": [[1,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[2,0]]}', "--pretty")

# errors are JSON too
proc = remcalc("divrem", "--dividend", "X^-1", "--divisor", "X")
print(json.loads(proc.stdout)["error"]["message"])
