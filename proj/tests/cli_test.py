"""CLI smoke tests: exit codes, schema validation, replay determinism."""
import json
import pathlib
import subprocess
import sys

import jsonschema

BIN = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])
failures = []


def run(*args):
    p = subprocess.run([BIN, *args], capture_output=True, text=True, timeout=600)
    return p.returncode, p.stdout, p.stderr


def check(name, cond, info=""):
    print(("ok   " if cond else "FAIL ") + name)
    if not cond:
        failures.append(name)
        if info:
            print("     " + info.strip().replace("\n", "\n     "))


def report(name, command, *args, code=0):
    rc, out, err = run(command, *args)
    check(f"{name}: exit {code}", rc == code, err or out[:400])
    if rc != code or code != 0:
        return None
    doc = json.loads(out)
    schema = json.loads((SCHEMAS / f"{command}.schema.json").read_text())
    try:
        jsonschema.validate(doc, schema)
        check(f"{name}: schema", True)
    except jsonschema.ValidationError as e:
        check(f"{name}: schema", False, str(e.message))
    return doc


mono = '{"M":[1,2,1],"sigma":["(1 2)","(2 3)"]}'

d = report("enumerate 1,1", "enumerate", "--alpha", "1,1", "--dims", "2,2")
check("enumerate 1,1 lists 4", d is not None and d["counts"]["listed"] == 4)
d = report("enumerate connected", "enumerate", "--alpha", "2", "--dims", "2", "--connected")
check("enumerate 2 connected lists 1", d is not None and d["counts"]["listed"] == 1)
d = report("enumerate 0", "enumerate", "--alpha", "0")
check("enumerate 0 is empty with a note", d is not None and d["monomials"] == [] and "note" in d)

d = report("eval identity", "eval", "--monomial", mono, "--identity", "--dims", "2,3")
check("identity value", d is not None and d["value"] == str(2 ** 2 * 3 ** 2))
naive = report("eval random", "eval", "--monomial", mono, "--random", "--dims", "2,2", "--seed", "11")
planned = report("eval random plan", "eval", "--monomial", mono, "--random", "--dims", "2,2", "--seed", "11", "--plan")
check("plan and naive agree", naive and planned and naive["value"] == planned["value"])
report("eval float", "eval", "--monomial", mono, "--random", "--dims", "2,2", "--plan", "--float")

d = report("verify alpha", "verify", "--dims", "2,2", "--m", "2", "--alpha", "1,1")
check("verify 1,1 matches", d is not None and d["all_match"])
d = report("verify centralizer", "verify", "--dims", "2,2", "--m", "2", "--centralizer")
check("centralizer 4 = 4", d is not None and d["checks"][0]["span_rho"] == 4 == d["checks"][0]["commutant_mu"])
report("verify invariance", "verify", "--dims", "2,2", "--alpha", "2", "--invariance", "--samples", "3")
report("verify oversized", "verify", "--dims", "3,3", "--alpha", "9", code=2)

d = report("hilbert 2,2", "hilbert", "--dims", "2,2", "--m", "1")
check("hilbert 2,2 bounds and poles",
      d is not None and d["bounds"]["segre"] == 16 and d["bounds"]["small_dim"] == 9 and d["pole_check"]["ok"])
d = report("hilbert 2", "hilbert", "--dims", "2", "--m", "1")
check("hilbert 2 is 1/((1-t)(1-t^2)(1-t^3)(1-t^4))",
      d is not None and d["reconstruction"]["rational"]["num"] == ["1"] and len(d["reconstruction"]["rational"]["den"]) == 11)
d = report("hilbert 1,1", "hilbert", "--dims", "1,1", "--m", "1")
check("hilbert 1,1 is 1/(1-t)", d is not None and d["reconstruction"]["rational"]["den"] == ["1", "-1"])
d = report("hilbert 2,3 default N", "hilbert", "--dims", "2,3", "--m", "1")
check("hilbert 2,3 default N is inconclusive", d is not None and d["reconstruction"]["status"] == "inconclusive")

report("bounds", "bounds", "--dims", "2,3", "--m", "2")
report("bounds empirical", "bounds", "--dims", "2,2", "--empirical", "--max-degree", "3")
report("plan", "plan", "--monomial", mono, "--dims", "2,2", "--optimal")

rc, out, _ = run("enumerate", "--alpha", "2", "--dims", "2,2", "--text")
check("text output", rc == 0 and not out.lstrip().startswith("{"))
rc, _, err = run("enumerate", "--alpha", "2,,1")
check("malformed alpha exits 2", rc == 2, err)
rc, _, err = run("eval", "--monomial", '{"M":[1],"sigma":["id"]}', "--identity", "--dims", "2,2")
check("dimension mismatch exits 2", rc == 2 and "permutations" in err, err)
rc, _, err = run("eval", "--monomial", '{"M":[1]}', "--identity")
check("missing field exits 2 with location", rc == 2 and "sigma" in err, err)
rc, _, _ = run("nonsense")
check("unknown command exits 2", rc == 2)

a = run("verify", "--dims", "2,2", "--alpha", "3", "--seed", "7")[1]
b = run("verify", "--dims", "2,2", "--alpha", "3", "--seed", "7")[1]
check("replay is bit-exact", a == b and json.loads(a)["seed"] == 7)

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
