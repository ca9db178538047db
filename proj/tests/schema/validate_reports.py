"""Run the experiment command for every family and validate report.json against the schema."""

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CONFIGS = {
    "ar1": {
        "process": {"family": "AR1", "params": {"phi": 0.5, "gamma0": 1.0}},
        "experiment": {"n_grid": [100, 1000], "replicates": 1000, "base_seed": 1,
                       "epsilons": [0.1, 0.3], "checks": ["LEMMA1", "THEOREM1", "WLLN", "BOUNDS", "VECTOR"]},
    },
    "remark3": {
        "process": {"family": "REMARK3"},
        "experiment": {"n_grid": [100, 1000], "replicates": 1000, "base_seed": 2},
    },
    "common_shock": {
        "process": {"family": "COMMON_SHOCK", "params": {"sigma_z": 1.0, "sigma_eps": 1.0}},
        "experiment": {"n_grid": [100, 1000], "replicates": 1000, "base_seed": 3, "epsilons": [0.5],
                       "checks": ["LEMMA1", "THEOREM1", "NONCONVERGENCE", "BOUNDS"]},
    },
    "drifting_mean": {
        "process": {"family": "DRIFTING_MEAN",
                    "params": {"trend": {"kind": "SINUSOID", "amplitude": 1.0, "period": 10.0}, "noise_sd": 1.0}},
        "experiment": {"n_grid": [100, 1000], "replicates": 1000, "base_seed": 4},
    },
}


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--schema", required=True)
    args = parser.parse_args()

    schema = json.loads(pathlib.Path(args.schema).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for name, config in CONFIGS.items():
            cfg = pathlib.Path(tmp) / f"{name}.json"
            cfg.write_text(json.dumps(config))
            out = pathlib.Path(tmp) / name
            proc = subprocess.run([args.cli, "experiment", "--config", str(cfg), "--out-dir", str(out)],
                                  capture_output=True, text=True)
            if proc.returncode not in (0, 1):
                print(f"{name}: exit {proc.returncode}: {proc.stderr.strip()}")
                failures += 1
                continue
            report = json.loads((out / "report.json").read_text())
            try:
                jsonschema.validate(report, schema, cls=jsonschema.Draft202012Validator)
                print(f"{name}: valid")
            except jsonschema.ValidationError as err:
                print(f"{name}: {err.message} at {list(err.absolute_path)}")
                failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
