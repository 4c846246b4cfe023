# Copyright 2026 The SurfCover Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Validates CLI JSON artifacts against docs/schemas."""

import json
import pathlib
import sys

import jsonschema

ARTIFACTS = {
    "seg.json": "segmentation",
    "path.json": "path",
    "viewpoints.json": "viewpoints",
    "metrics.json": "metrics",
}


def main() -> int:
    if len(sys.argv) != 3:
        print("usage: validate_json.py <schema-dir> <artifact-dir>", file=sys.stderr)
        return 1
    schemas = pathlib.Path(sys.argv[1])
    artifacts = pathlib.Path(sys.argv[2])
    failures = 0
    for name, schema_name in ARTIFACTS.items():
        schema = json.loads((schemas / f"{schema_name}.schema.json").read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        doc = json.loads((artifacts / name).read_text())
        errors = list(jsonschema.Draft202012Validator(schema).iter_errors(doc))
        for e in errors[:5]:
            print(f"{name}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
        print(f"{name}: {'ok' if not errors else f'{len(errors)} error(s)'}")
        failures += bool(errors)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
