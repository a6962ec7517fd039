"""Bundled example data and the script that regenerates it.

* ``model.json``: a seeded two-factor free-Boolean operator model.
* ``moments.json``: its moments on all words of length at most 4.
* ``cumulants.json``: the free-Boolean cumulants of those words.
* ``defect.json``: ``moments.json`` with the moment of one mixed word altered.
* ``fock.json``: rational central-limit data on a two-dimensional Fock space.

Run ``python -m freeboolean.fixtures`` to rewrite the files.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import io
from .cumulants import CumulantTable, MomentSpec
from .operators import OperatorModel, random_model

SEED = 2024
MAX_LEN = 4
DEFECT_WORD = "a1 a2"

__all__ = ["generate", "data_path", "load_fixture", "SEED", "DEFECT_WORD"]


def data_path(name: str) -> Path:
    return Path(str(resources.files("freeboolean") / "data" / name))


def load_fixture(name: str):
    return io.load(data_path(name))


def generate() -> dict[str, object]:
    """All fixture objects, keyed by file name."""
    model = random_model(random.Random(SEED), n_factors=2, dims=(2,), depth=MAX_LEN)
    ids = list(model.letters)
    keys = [k for n in range(1, MAX_LEN + 1) for k in itertools.product(ids, repeat=n)]
    moments = model.spec().tabulate(keys)
    cumulants = CumulantTable.from_moments(moments)
    defect = moments.with_value(DEFECT_WORD, moments.value(tuple(DEFECT_WORD.split())) + 1)
    fock = {"hdim": 2, "depth": 6, "I": ["1", "2"], "J": ["3"],
            "h": {"1": ["1", "0"], "2": ["1/2", "1"], "3": ["0", "2"]},
            "hstar": {"1": ["1", "1/3"], "2": ["0", "1"], "3": ["-1", "1/2"]}}
    return {
        "model.json": model.to_json(),
        "moments.json": moments.to_json(),
        "cumulants.json": cumulants.to_json(),
        "defect.json": defect.to_json(),
        "fock.json": fock,
    }


def main() -> None:
    for name, obj in generate().items():
        io.dump(obj, data_path(name))
        print(f"wrote {data_path(name)}")


if __name__ == "__main__":
    main()
