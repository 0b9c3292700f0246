"""Running the program on the blow-up of P3 at a point.

The blow-up is embedded by the quadrics through the point.  With b2 values
and one hint divisor (the pullback of a plane) the run contracts the
exceptional divisor and then maps P3 to a point.
"""

from pathlib import Path

from algmmp.cli import render_trace
from algmmp.fileio import dump_json, hints_for, load_json, oracle_from_json, variety_from_json
from algmmp.mmp import run_mmp

fixtures = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
X = variety_from_json(load_json(fixtures / "Bl_pP3.json"), certify=False)
oracle = oracle_from_json(load_json(fixtures / "oracle.json"))
hints = load_json(fixtures / "hints.json")

seq = run_mmp(X, oracle, hints=lambda V: hints_for(V, hints))
trace = seq.to_json()
print(render_trace(trace), end="")

first = seq.steps[0].certificate
print("witness curve:", first.curve.gens)
print("K.C on it:", first.value, " exceptional codim:", first.exc_codim)
print(len(dump_json(trace)), "bytes of JSON trace")
