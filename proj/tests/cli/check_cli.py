# SPDX-License-Identifier: MIT
"""End-to-end checks of the lab binary: exit codes, outputs, schemas, reruns."""

import json
import os
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

LAB = pathlib.Path(sys.argv[1])
ROOT = pathlib.Path(sys.argv[2])
SCHEMAS = ROOT / "schemas"
CONFIGS = ROOT / "configs"
FAILURES = []


def load_registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        resources.append((path.name, Resource.from_contents(json.loads(path.read_text()))))
    return Registry().with_resources(resources)


REGISTRY = load_registry()


def validate(instance, schema_name):
    schema = json.loads((SCHEMAS / schema_name).read_text())
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(instance)


def check(name, condition, detail=""):
    print(("PASS " if condition else "FAIL ") + name + (f": {detail}" if detail and not condition else ""))
    if not condition:
        FAILURES.append(name)


def run(args, out_dir, env_dir=None):
    env = dict(os.environ)
    env.pop("LAB_OUTPUT_DIR", None)
    if env_dir is not None:
        env["LAB_OUTPUT_DIR"] = str(env_dir)
    cmd = [str(LAB)] + args
    if out_dir is not None:
        cmd += ["--out", str(out_dir)]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


def error_kind(proc):
    payload = json.loads(proc.stderr)
    validate(payload, "error.schema.json")
    return payload["error"]["kind"], payload["error"]["exitCode"]


def first_line(path):
    return path.read_text().splitlines()[0]


def main():
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="lab-cli-"))

    for config in sorted(CONFIGS.glob("*.json")):
        try:
            validate(json.loads(config.read_text()), "experiment.schema.json")
            check(f"config {config.name} validates", True)
        except jsonschema.ValidationError as e:
            check(f"config {config.name} validates", False, e.message)

    out = tmp / "residual"
    p = run(["residual", "--solution", "builtin:sin-exp", "--equation", "sle", "--theta", "0", "--points", "1000"], out)
    check("residual sin-exp exits 0", p.returncode == 0, p.stderr)
    if p.returncode == 0:
        result = json.loads(p.stdout)
        validate(result, "residual.schema.json")
        check("residual sin-exp at most 1e-12", result["maxAbsResidual"] <= 1e-12, str(result["maxAbsResidual"]))
        check("residual.json matches stdout", json.loads((out / "residual.json").read_text()) == result)
        check("2d samples header", first_line(out / "samples.csv") == "x1,x2,u,du1,du2,h11,h12,h22")

    out = tmp / "warren"
    p = run(["residual", "--solution", "builtin:warren3d", "--equation", "sigma2", "--points", "200"], out)
    check("residual warren3d exits 0", p.returncode == 0, p.stderr)
    check("3d samples header",
          first_line(out / "samples.csv") == "x1,x2,x3,u,du1,du2,du3,h11,h12,h22,h13,h23,h33")

    out = tmp / "oracle"
    p = run(["oracle", "--solution", str(CONFIGS / "ma_radial.json")], out)
    check("oracle rejects an experiment file as a solution", p.returncode == 2 and error_kind(p)[0] == "ConfigError")
    p = run(["oracle", "--solution", "builtin:ihh-oracle", "--params", '{"a1": [0.2, 0.1], "am1": 0.4}'], out)
    check("oracle ihh exits 0", p.returncode == 0, p.stderr)
    if p.returncode == 0:
        validate(json.loads((out / "oracle.json").read_text()), "oracle.schema.json")

    out = tmp / "fit"
    p = run(["fit", "--solution", "builtin:sin-exp"], out)
    check("fit sin-exp exits 1", p.returncode == 1, p.stderr)
    check("fit sin-exp reports NoDecay", error_kind(p) == ("NoDecay", 1))

    p = run(["fit", "--solution", "builtin:ma-radial", "--params", '{"c": 1}'], out)
    check("fit ma-radial exits 0", p.returncode == 0, p.stderr)
    if p.returncode == 0:
        profile = json.loads((out / "profile.json").read_text())
        validate(profile, "profile.schema.json")
        check("fit ma-radial d", abs(profile["d"] - 0.5) <= 1e-3, str(profile["d"]))

    out = tmp / "bd"
    p = run(["boundary-d", "--solution", "builtin:ma-radial", "--curve", '{"type": "circle", "radius": 1}'], out)
    check("boundary-d exits 0", p.returncode == 0, p.stderr)
    if p.returncode == 0:
        result = json.loads((out / "boundary_d.json").read_text())
        validate(result, "boundary_d.schema.json")
        check("boundary-d ma-radial", abs(result["d"] - 0.5) <= 1e-6, str(result["d"]))

    runs = []
    for k in range(2):
        out = tmp / f"exp{k}"
        p = run(["experiment", "--config", str(CONFIGS / "ma_radial.json")], out)
        runs.append(out)
        check(f"experiment ma_radial run {k} exits 0", p.returncode == 0, p.stderr)
    summary = json.loads((runs[0] / "summary.json").read_text())
    validate(summary, "summary.schema.json")
    validate(json.loads((runs[0] / "profile.json").read_text()), "profile.schema.json")
    validate(json.loads((runs[0] / "boundary_d.json").read_text()), "boundary_d.schema.json")
    check("experiment d_fit", abs(summary["dFit"] - 0.5) <= 1e-3, str(summary["dFit"]))
    check("experiment d_boundary", abs(summary["dBoundary"] - 0.5) <= 1e-6, str(summary["dBoundary"]))
    check("experiment checks pass", summary["pass"])
    names = sorted(p.name for p in runs[0].iterdir())
    same = names == sorted(p.name for p in runs[1].iterdir()) and all(
        (runs[0] / n).read_bytes() == (runs[1] / n).read_bytes() for n in names)
    check("experiment reruns are byte-identical", same)

    env_dir = tmp / "from-env"
    flag_dir = tmp / "from-flag"
    p = run(["fit", "--solution", "builtin:ma-radial"], flag_dir, env_dir=env_dir)
    check("LAB_OUTPUT_DIR overrides --out",
          p.returncode == 0 and (env_dir / "profile.json").exists() and not flag_dir.exists())

    bad = tmp / "bad.json"
    config = json.loads((CONFIGS / "ma_radial.json").read_text())
    config["shell"] = config["shells"]
    bad.write_text(json.dumps(config))
    p = run(["experiment", "--config", str(bad)], tmp / "bad")
    check("unknown config key exits 2", p.returncode == 2 and error_kind(p) == ("ConfigError", 2))
    p = run(["fit", "--solution", "builtin:nope"], tmp / "bad")
    check("unknown builtin exits 2", p.returncode == 2 and error_kind(p)[0] == "UnknownName")
    p = run(["fit", "--solution", "builtin:ma-radial", "--params", '{"c": 1, "z": 2}'], tmp / "bad")
    check("unknown builtin parameter exits 2", p.returncode == 2 and error_kind(p)[0] == "BadParams")
    p = run(["fit", "--solution", "builtin:ma-radial", "--bogus"], tmp / "bad")
    check("unknown flag exits 2", p.returncode == 2 and error_kind(p)[0] == "ConfigError")
    p = run(["experiment", "--config", str(tmp / "missing.json")], tmp / "bad")
    check("missing config exits 2", p.returncode == 2)

    out = tmp / "solve"
    p = run(["solve", "--solution", "builtin:ma-radial", "--grid", "17,32"], out)
    check("solve ma-radial exits 0", p.returncode == 0, p.stderr)
    if p.returncode == 0:
        validate(json.loads((out / "report.json").read_text()), "report.schema.json")
        check("field header", first_line(out / "field.csv") == "i,j,r,theta,x1,x2,u")
    out = tmp / "solve-capped"
    p = run(["solve", "--solution", "builtin:ma-radial", "--grid", "17,32", "--max-iterations", "1"], out)
    check("iteration cap exits 1 with DidNotConverge", p.returncode == 1 and error_kind(p)[0] == "DidNotConverge")
    report = json.loads((out / "report.json").read_text())
    validate(report, "report.schema.json")
    check("capped report keeps status", report["status"] == "did-not-converge")
    out = tmp / "study"
    p = run(["solve", "--solution", "builtin:ma-radial", "--grid", "9,16", "--refinements", "2"], out)
    check("two-grid study exits 0", p.returncode == 0, p.stderr)
    if p.returncode == 0:
        validate(json.loads((out / "convergence.json").read_text()), "convergence.schema.json")

    print(f"{len(FAILURES)} failure(s)")
    return 1 if FAILURES else 0


if __name__ == "__main__":
    sys.exit(main())
