"""Rewrite the expected outputs next to cases.json.  Run only after checking a diff by hand."""

import contextlib
import io
import json
import pathlib

from cartanlimits.cli import main

HERE = pathlib.Path(__file__).parent


def run(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main(argv)
    return out.getvalue(), code


if __name__ == "__main__":
    for case in json.loads((HERE / "cases.json").read_text()):
        text, code = run(case["argv"])
        (HERE / f"{case['name']}.out").write_text(f"exit {code}\n{text}")
        print(case["name"], code)
