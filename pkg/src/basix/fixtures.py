"""The fixture registry shipped with the repository.

Each entry is a scene source text; the expected verdicts are frozen in the
acceptance suite after being derived with the independent sampling oracles.
"""

from __future__ import annotations

from .scene import Scene

FIXTURES: dict[str, str] = {
    "half": "factor f = y;\nset S = { f > 0 };\n",
    "quad": "factor a = x;\nfactor b = y;\nset S = { a > 0, b > 0 };\n",
    "saddle": "factor a = x;\nfactor b = y;\nset S = { a > 0, b > 0 } | { a < 0, b < 0 };\n",
    "para": (
        "factor a = x;\nfactor l = y;\nfactor p = y - x^2;\n"
        "set S = { a < 0, l > 0, p != 0 } | { a > 0, l > 0, p < 0 };\n"
    ),
    "cubic": (
        "factor a = x;\nfactor f0 = y - x^2;\nfactor f1 = y - x^2 - x^3;\n"
        "factor f2 = y - x^2 - 2*x^3;\nfactor f3 = y - x^2 - 3*x^3;\n"
        "set S = { f0 > 0, f1 < 0 } | { f0 < 0, f1 > 0 } | { a < 0, f2 < 0, f3 > 0 };\n"
    ),
}


def fixture_scene(name: str) -> Scene:
    return Scene.from_text(FIXTURES[name])


def fixture_names() -> list[str]:
    return list(FIXTURES)
