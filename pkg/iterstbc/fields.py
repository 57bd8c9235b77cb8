"""Built-in number fields, generated from minimal polynomials."""

from __future__ import annotations

import cmath
import logging
import math
from functools import lru_cache
from typing import Callable

import mpmath

from .errors import FieldSpecError
from .numfield import Field, FieldSpec, adjoin_sqrt, field_from_min_poly, field_make, parse_element

logger = logging.getLogger(__name__)


def _derive(field: Field, definitions: dict[str, tuple[str, complex]]) -> Field:
    """Register named elements given by expressions, checking their embeddings."""
    for name, (expr, expected) in definitions.items():
        value = parse_element(field, expr)
        if abs(value.embed() - expected) > 1e-12 * max(1.0, abs(expected)):
            raise FieldSpecError(f"{field.name}: {name} = {expr} embeds to {value.embed()}, expected {expected}")
        field.generators[name] = value
    return field


@lru_cache(maxsize=None)
def rationals() -> Field:
    return field_make(
        FieldSpec(
            name="Q",
            degree=1,
            basis=["1"],
            mult_table=[[["1"]]],
            automorphisms={"conj": [["1"]]},
            embedding=[("1", "0")],
            conjugation="conj",
        )
    )


@lru_cache(maxsize=None)
def gaussian() -> Field:
    """Q(i)."""
    return field_from_min_poly(
        "Q(i)", [1, 0, 1], 1j, automorphism_images={"conj": [0, -1]},
        symbol="i", conjugation="conj", generators={"i": [0, 1]},
    )


@lru_cache(maxsize=None)
def q_sqrt5() -> Field:
    field = field_from_min_poly(
        "Q(sqrt5)", [-5, 0, 1], lambda: mpmath.sqrt(5),
        automorphism_images={"sigma": [0, -1], "conj": [0, 1]},
        symbol="sqrt5", conjugation="conj", generators={"sqrt5": [0, 1]},
    )
    return _derive(field, {"phi": ("(1+sqrt5)/2", (1 + math.sqrt(5)) / 2)})


@lru_cache(maxsize=None)
def q_sqrt2() -> Field:
    return field_from_min_poly(
        "Q(sqrt2)", [-2, 0, 1], lambda: mpmath.sqrt(2),
        automorphism_images={"sigma2": [0, -1], "conj": [0, 1]},
        symbol="sqrt2", conjugation="conj", generators={"sqrt2": [0, 1]},
    )


@lru_cache(maxsize=None)
def q_sqrtm7() -> Field:
    """Q(sqrt(-7)); complex conjugation is the nontrivial automorphism tau."""
    field = field_from_min_poly(
        "Q(sqrt-7)", [7, 0, 1], lambda: mpmath.mpc(0, mpmath.sqrt(7)),
        automorphism_images={"tau": [0, -1]},
        symbol="sqrtm7", conjugation="tau", generators={"sqrtm7": [0, 1]},
    )
    return _derive(field, {"omega": ("(1+sqrtm7)/2", (1 + 1j * math.sqrt(7)) / 2)})


@lru_cache(maxsize=None)
def q_i_sqrt5() -> Field:
    """Q(i, sqrt5); sigma: sqrt5 -> -sqrt5 fixing i."""
    field = adjoin_sqrt(gaussian(), gaussian()(5), "sqrt5", name="Q(i,sqrt5)", neg_name="sigma")
    return _derive(field, {"phi": ("(1+sqrt5)/2", (1 + math.sqrt(5)) / 2)})


@lru_cache(maxsize=None)
def q_i_sqrtm7() -> Field:
    """Q(i, sqrt(-7)); sigma: i -> -i fixing sqrt(-7)."""
    base = q_sqrtm7()
    field = adjoin_sqrt(base, base(-1), "i", name="Q(i,sqrt-7)", neg_name="sigma")
    return _derive(field, {
        "sqrt7": ("-i*sqrtm7", complex(math.sqrt(7))),
        "omega": ("(1+sqrtm7)/2", (1 + 1j * math.sqrt(7)) / 2),
    })


@lru_cache(maxsize=None)
def q_i_sqrt2() -> Field:
    """Q(sqrt2, i); conj: i -> -i fixing sqrt2."""
    base = q_sqrt2()
    return adjoin_sqrt(base, base(-1), "i", name="Q(sqrt2,i)", neg_name="iota")


_ZETA7 = cmath.exp(2j * math.pi / 7)


def _zeta7_definitions() -> dict[str, tuple[str, complex]]:
    return {
        "eta1": ("zeta + zeta**6", _ZETA7 + _ZETA7**6),
        "eta2": ("zeta**2 + zeta**5", _ZETA7**2 + _ZETA7**5),
        "sqrtm7": ("1 + 2*(zeta + zeta**2 + zeta**4)", 1j * math.sqrt(7)),
    }


@lru_cache(maxsize=None)
def q_zeta7() -> Field:
    """Q(zeta7) with zeta7 -> exp(2 pi i / 7); sigma_k: zeta -> zeta^k, tau = sigma_6."""
    field = field_from_min_poly(
        "Q(zeta7)", [1, 1, 1, 1, 1, 1, 1], lambda: mpmath.expjpi(mpmath.mpf(2) / 7),
        automorphism_images={
            "sigma2": [0, 0, 1],
            "sigma3": [0, 0, 0, 1],
            "tau": [0, 0, 0, 0, 0, 0, 1],
        },
        symbol="zeta", conjugation="tau", generators={"zeta": [0, 1]},
    )
    return _derive(field, _zeta7_definitions())


@lru_cache(maxsize=None)
def q_zeta7_i() -> Field:
    """Q(zeta7, i) of degree 12; tau: zeta -> zeta^-1 fixing i, iota: i -> -i."""
    base = q_zeta7()
    field = adjoin_sqrt(base, base(-1), "i", name="Q(zeta7,i)", neg_name="iota")
    definitions = _zeta7_definitions()
    definitions["sqrt7"] = ("-i*sqrtm7", complex(math.sqrt(7)))
    return _derive(field, definitions)


BUILTIN_FIELDS: dict[str, Callable[[], Field]] = {
    "Q": rationals,
    "Q(i)": gaussian,
    "Q(sqrt5)": q_sqrt5,
    "Q(sqrt2)": q_sqrt2,
    "Q(sqrt-7)": q_sqrtm7,
    "Q(i,sqrt5)": q_i_sqrt5,
    "Q(i,sqrt-7)": q_i_sqrtm7,
    "Q(sqrt2,i)": q_i_sqrt2,
    "Q(zeta7)": q_zeta7,
    "Q(zeta7,i)": q_zeta7_i,
}


def get_field(name: str) -> Field:
    try:
        return BUILTIN_FIELDS[name]()
    except KeyError:
        raise FieldSpecError(f"Unknown field {name!r}; known: {', '.join(BUILTIN_FIELDS)}") from None
