"""Validates every JSON document the CLI emits against docs/zigzag.schema.json."""

import json
import subprocess
import sys

import jsonschema


def emit(binary, args):
    result = subprocess.run([binary, *args], capture_output=True, text=True, check=False)
    if result.returncode != 0:
        raise SystemExit(f"{' '.join(args)} exited with {result.returncode}: {result.stderr}")
    return json.loads(result.stdout)


def main():
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as handle:
        schema = json.load(handle)
    jsonschema.Draft202012Validator.check_schema(schema)

    def validator(name):
        return jsonschema.Draft202012Validator({"$ref": f"#/$defs/{name}", "$defs": schema["$defs"]})

    checked = 0
    predictions = validator("prediction")
    for p, aps in ((5, ["p", "p^(3/2)", "(1+1*sqrt(p))*p^(3/2)", "u*p^(1/2)", "2*p^2"]),
                   (7, ["p^(3/2)", "(2+1*sqrt(p))*p^(5/2)", "p^3"])):
        for ap in aps:
            for k in range(3, 8 * p):
                predictions.validate(emit(binary, ["predict", "--p", str(p), "--k", str(k), "--ap", ap]))
                checked += 1

    reps = validator("galois_rep")
    labels = validator("smooth_labels")
    for rep in ('{"kind":"irred","c":7}', '{"kind":"red","summands":[{"a":2,"lambda":"3"},{"a":1,"lambda":"2"}]}',
                '{"kind":"red","summands":[{"a":1,"lambda":"1"},{"a":1,"lambda":"1"}]}'):
        mapped = emit(binary, ["llc", "--map", "--p", "5", "--input", rep])
        labels.validate(mapped)
        reps.validate(emit(binary, ["llc", "--unmap", "--p", "5", "--input", json.dumps(mapped)]))
        checked += 2

    hecke = validator("hecke_function")
    for args in (["--p", "3", "--r", "0", "--coeffs", "1", "--apply-t", "3"],
                 ["--p", "5", "--r", "2", "--coeffs", "1,2,3", "--apply-t", "2", "--M", "3"],
                 ["--p", "3", "--r", "1", "--coeffs", "1,0,0,1", "--f", "2"]):
        hecke.validate(emit(binary, ["hecke", *args]))
        checked += 1

    print(f"{checked} documents valid")


if __name__ == "__main__":
    main()
