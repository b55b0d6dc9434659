"""
Driving the command-line tool
=============================

Everything above is also reachable from the shell as
``polya-bernstein <command>`` (or ``python -m polya_bernstein``).  Here
the entry point is called in-process.
"""

from polya_bernstein.cli import main

main(["pmf", "--n", "3", "--x", "1/3"])
main(["root", "--n", "5"])
main(["sweep", "--n", "2", "--k", "1", "--points", "5"])
main(["operator", "--n", "3", "--fn", "square", "--points", "4", "--mode", "rational"])
code = main(["verify", "theorem1", "--n-max", "6", "--grid", "501", "--no-timing"])
print("exit code", code)
code = main(["pmf", "--n", "1", "--x", "0.5"])
print("exit code for n=1:", code)
