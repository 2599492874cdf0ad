"""JSON encoding, decoding, and schemas for every public value type.

Integers that can grow without bound (matrix entries, lattice vectors,
eigenvalue primes/exponents, orders) are emitted as decimal strings so
they survive any JSON consumer; bounded integers (polynomial exponents,
block sizes, degrees, indices) stay plain.  Decoders accept both forms.
"""

from __future__ import annotations

from fractions import Fraction

from .cone import ConeCertificate
from .eigenvalues import Eigenvalue, FactoredRational, RootOfUnity, parse_eigenvalue
from .errors import DomainError, InputError
from .intmatrix import IntMatrix, LatticeBasis
from .monomial_maps import HomogeneousMonomialMap
from .normal_form import NormalFormResult
from .polynomials import MultiIndex, PolynomialQ
from .relations import IndependencePartition, RelationLattice
from .spectral import GrowthClass, QuasiUnipotentResult, SpectralData
from .sym_power import ChainDecomposition, WeightComponent


def _int_in(value, what: str) -> int:
    if isinstance(value, bool):
        raise InputError(f"{what} must be an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError as exc:
            raise InputError(f"{what} is not a decimal integer: {value!r}") from exc
    raise InputError(f"{what} must be an integer or decimal string")


def _frac_in(value, what: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{what} must be rational")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{what} is not a rational: {value!r}") from exc
    raise InputError(f"{what} must be a rational as 'p/q' string or integer")


# -- eigenvalues ------------------------------------------------------------


def encode_eigenvalue(ev: Eigenvalue) -> dict:
    return {
        "torsion": {"order": str(ev.torsion.order), "exp": str(ev.torsion.exp)},
        "magnitude": [[str(p), str(e)] for p, e in ev.magnitude.factors],
    }


def decode_eigenvalue(obj) -> Eigenvalue:
    if isinstance(obj, str):
        try:
            return parse_eigenvalue(obj)
        except DomainError as exc:
            raise InputError(str(exc)) from exc
    if not isinstance(obj, dict):
        raise InputError("eigenvalue must be a string or an object")
    try:
        torsion = obj["torsion"]
        order = _int_in(torsion["order"], "torsion order")
        exp = _int_in(torsion["exp"], "torsion exponent")
        magnitude = {_int_in(p, "prime"): _int_in(e, "exponent") for p, e in obj.get("magnitude", [])}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed eigenvalue object: {exc}") from exc
    return Eigenvalue(RootOfUnity.make(exp, order), FactoredRational.make(magnitude))


# -- matrices and lattices --------------------------------------------------


def encode_matrix(a: IntMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in a.data]


def decode_matrix(obj) -> IntMatrix:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise InputError("matrix must be an array of arrays")
    return IntMatrix.from_rows([[_int_in(x, "matrix entry") for x in row] for row in obj])


def decode_rational_matrix(obj) -> list[list[Fraction]]:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise InputError("matrix must be an array of arrays")
    return [[_frac_in(x, "matrix entry") for x in row] for row in obj]


def encode_lattice_basis(b: LatticeBasis) -> dict:
    return {"ambient_dim": b.ambient_dim, "basis": encode_matrix(b.basis)}


# -- spectral data and growth -----------------------------------------------


def encode_spectral(s: SpectralData) -> dict:
    return {
        "blocks": [[encode_eigenvalue(ev), size] for ev, size in s.blocks],
        "normalized": s.normalized,
    }


def decode_spectral(obj) -> SpectralData:
    if not isinstance(obj, dict) or "blocks" not in obj:
        raise InputError("spectral data must be an object with a 'blocks' array")
    blocks = []
    for entry in obj["blocks"]:
        if not isinstance(entry, list) or len(entry) != 2:
            raise InputError("each block must be [eigenvalue, size]")
        blocks.append((decode_eigenvalue(entry[0]), _int_in(entry[1], "block size")))
    return SpectralData(tuple(blocks), normalized=bool(obj.get("normalized", False)))


def encode_growth(g: GrowthClass) -> dict:
    out: dict = {"tag": g.tag, "display": str(g)}
    if g.tag == "exponential":
        out["rate"] = str(g.rate) if g.exact else float(g.rate)
        out["exact"] = g.exact
    if g.tag == "polynomial":
        out["degree"] = g.degree
    return out


def encode_quasi_unipotent(q: QuasiUnipotentResult) -> dict:
    out: dict = {"kind": q.kind, "display": str(q)}
    if q.order is not None:
        out["order"] = str(q.order)
    return out


# -- normal forms -----------------------------------------------------------


def encode_normal_form(r: NormalFormResult) -> dict:
    return {
        "case": r.case,
        "k": r.k,
        "order": str(r.order) if r.order is not None else None,
        "target": encode_spectral(r.target),
        "conjugator": encode_matrix(r.conjugator) if r.conjugator is not None else None,
        "conjugacy": r.conjugacy,
    }


def decode_normal_form(obj) -> NormalFormResult:
    if not isinstance(obj, dict) or "case" not in obj or "target" not in obj:
        raise InputError("normal-form object needs 'case' and 'target'")
    case = obj["case"]
    if case not in ("finite-order", "m1", "m2"):
        raise InputError(f"unknown normal-form case {case!r}")
    return NormalFormResult(
        case,
        decode_spectral(obj["target"]),
        k=None if obj.get("k") is None else _int_in(obj["k"], "k"),
        order=None if obj.get("order") is None else _int_in(obj["order"], "order"),
        conjugator=None if obj.get("conjugator") is None else decode_matrix(obj["conjugator"]),
        conjugacy=obj.get("conjugacy", "none-needed"),
    )


def encode_partition(p: IndependencePartition) -> dict:
    return {
        "k_torsion": p.k_torsion,
        "conjugator": encode_matrix(p.conjugator),
        "transformed": [encode_eigenvalue(v) for v in p.transformed],
    }


def encode_relation_lattice(r: RelationLattice) -> dict:
    return {
        "values": [encode_eigenvalue(v) for v in r.values],
        "exact": encode_lattice_basis(r.exact),
        "up_to_torsion": encode_lattice_basis(r.up_to_torsion),
    }


# -- polynomials ------------------------------------------------------------


def encode_polynomial(p: PolynomialQ) -> list:
    return [[list(mi), str(c)] for mi, c in p.terms]


def decode_polynomial(obj, n_vars: int | None = None) -> PolynomialQ:
    if not isinstance(obj, list):
        raise InputError("polynomial must be an array of [exponents, coeff] pairs")
    terms = []
    for entry in obj:
        if not isinstance(entry, list) or len(entry) != 2 or not isinstance(entry[0], list):
            raise InputError("each polynomial term must be [exponent-list, coeff]")
        exps = tuple(_int_in(e, "exponent") for e in entry[0])
        if n_vars is None:
            n_vars = len(exps)
        terms.append((exps, _frac_in(entry[1], "coefficient")))
    if n_vars is None:
        raise InputError("cannot infer variable count from an empty polynomial")
    return PolynomialQ.make(n_vars, terms)


def encode_multi_index(mi: MultiIndex) -> list[int]:
    return list(mi)


def encode_weight_component(w: WeightComponent) -> dict:
    return {"character": list(w.character), "basis": [list(mi) for mi in w.basis]}


def encode_chain(c: ChainDecomposition) -> dict:
    return {
        "chain_top": encode_polynomial(c.chain_top),
        "chain": [encode_polynomial(p) for p in c.chain],
        "q": encode_multi_index(c.q),
        "base_poly": encode_polynomial(c.base_poly),
        "iterate": c.iterate,
    }


def encode_cone_certificate(c: ConeCertificate) -> dict:
    return {
        "vertex_vanishing": list(c.vertex_vanishing),
        "base_vanishing": list(c.base_vanishing),
        "stripped_generators": [encode_polynomial(p) for p in c.stripped_generators],
        "monomial_factors": [encode_multi_index(mi) for mi in c.monomial_factors],
        "generators": [encode_polynomial(p) for p in c.generators],
        "warnings": list(c.warnings),
        "assumed": list(c.assumed),
    }


def encode_monomial_map(m: HomogeneousMonomialMap) -> dict:
    return {
        "components": [list(c) for c in m.components],
        "torus_matrix": encode_matrix(m.torus_matrix),
        "degree": m.degree,
    }


# -- schemas ----------------------------------------------------------------

_INTLIKE = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+$"}]}
_FRACLIKE = {
    "oneOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+(/-?[0-9]+)?$"}]
}
_DECSTRING = {"type": "string", "pattern": "^-?[0-9]+$"}
_FRACSTRING = {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"}
_MATRIX_OUT = {"type": "array", "items": {"type": "array", "items": _DECSTRING}}
_MATRIX_IN = {"type": "array", "items": {"type": "array", "items": _INTLIKE}}
_EIGEN_OUT = {
    "type": "object",
    "required": ["torsion", "magnitude"],
    "properties": {
        "torsion": {
            "type": "object",
            "required": ["order", "exp"],
            "properties": {"order": _DECSTRING, "exp": _DECSTRING},
        },
        "magnitude": {
            "type": "array",
            "items": {"type": "array", "items": _DECSTRING, "minItems": 2, "maxItems": 2},
        },
    },
}
_EIGEN_IN = {"oneOf": [{"type": "string"}, _EIGEN_OUT]}
_POLY_OUT = {
    "type": "array",
    "items": {
        "type": "array",
        "minItems": 2,
        "maxItems": 2,
        "items": [
            {"type": "array", "items": {"type": "integer", "minimum": 0}},
            _FRACSTRING,
        ],
    },
}
_POLY_IN = _POLY_OUT
_SPECTRAL_OUT = {
    "type": "object",
    "required": ["blocks", "normalized"],
    "properties": {
        "blocks": {
            "type": "array",
            "items": {"type": "array", "minItems": 2, "maxItems": 2},
        },
        "normalized": {"type": "boolean"},
    },
}
_SPECTRAL_IN = _SPECTRAL_OUT
_LATTICE_OUT = {
    "type": "object",
    "required": ["ambient_dim", "basis"],
    "properties": {"ambient_dim": {"type": "integer"}, "basis": _MATRIX_OUT},
}
_GROWTH_OUT = {
    "type": "object",
    "required": ["tag", "display"],
    "properties": {
        "tag": {"enum": ["exponential", "polynomial", "bounded"]},
        "display": {"type": "string"},
        "rate": {"oneOf": [{"type": "number"}, _FRACSTRING]},
        "degree": {"type": "integer", "minimum": 1},
        "exact": {"type": "boolean"},
    },
}
_NORMAL_FORM_OUT = {
    "type": "object",
    "required": ["case", "target", "conjugacy"],
    "properties": {
        "case": {"enum": ["finite-order", "m1", "m2"]},
        "k": {"oneOf": [{"type": "integer"}, {"type": "null"}]},
        "order": {"oneOf": [_DECSTRING, {"type": "null"}]},
        "target": _SPECTRAL_OUT,
        "conjugator": {"oneOf": [_MATRIX_OUT, {"type": "null"}]},
        "conjugacy": {"enum": ["monomial", "deferred", "none-needed"]},
    },
}

SCHEMAS: dict[str, dict] = {
    "relations": {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "relations",
        "payload": {"type": "array", "minItems": 1, "items": _EIGEN_IN},
        "result": {
            "type": "object",
            "required": ["values", "exact", "up_to_torsion", "partition"],
            "properties": {
                "values": {"type": "array", "items": _EIGEN_OUT},
                "exact": _LATTICE_OUT,
                "up_to_torsion": _LATTICE_OUT,
                "partition": {
                    "type": "object",
                    "required": ["k_torsion", "conjugator", "transformed"],
                    "properties": {
                        "k_torsion": {"type": "integer", "minimum": 0},
                        "conjugator": _MATRIX_OUT,
                        "transformed": {"type": "array", "items": _EIGEN_OUT},
                    },
                },
            },
        },
    },
    "normal-form": {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "normal-form",
        "payload": {
            "type": "object",
            "properties": {"matrix": _MATRIX_IN, "spectral": _SPECTRAL_IN},
        },
        "result": _NORMAL_FORM_OUT,
    },
    "growth": {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "growth",
        "payload": {
            "type": "object",
            "properties": {"matrix": _MATRIX_IN, "spectral": _SPECTRAL_IN},
        },
        "result": {
            "type": "object",
            "required": ["growth", "spectral"],
            "properties": {"growth": _GROWTH_OUT, "spectral": _SPECTRAL_OUT},
        },
    },
    "decompose": {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "decompose",
        "payload": {
            "type": "object",
            "required": ["spectral"],
            "properties": {
                "spectral": _SPECTRAL_IN,
                "generators": {"type": "array", "items": _POLY_IN},
                "degree": {"type": "integer", "minimum": 1},
                "case": {"enum": ["m1", "m2"]},
            },
        },
        "result": {
            "type": "object",
            "required": ["case"],
            "properties": {
                "case": {"enum": ["m1", "m2"]},
                "degree": {"type": "integer"},
                "components": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["character", "basis"],
                        "properties": {
                            "character": {"type": "array", "items": {"type": "integer"}},
                            "basis": {
                                "type": "array",
                                "items": {"type": "array", "items": {"type": "integer"}},
                            },
                        },
                    },
                },
                "chain": {
                    "type": "object",
                    "required": ["chain", "q", "base_poly", "iterate"],
                    "properties": {
                        "chain_top": _POLY_OUT,
                        "chain": {"type": "array", "items": _POLY_OUT},
                        "q": {"type": "array", "items": {"type": "integer"}},
                        "base_poly": _POLY_OUT,
                        "iterate": {"type": "integer", "minimum": 1},
                    },
                },
            },
        },
    },
    "cone": {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "cone",
        "payload": {
            "type": "object",
            "required": ["normal_form", "generators", "degree"],
            "properties": {
                "normal_form": _NORMAL_FORM_OUT,
                "generators": {"type": "array", "items": _POLY_IN},
                "degree": {"type": "integer", "minimum": 1},
            },
        },
        "result": {
            "type": "object",
            "required": [
                "vertex_vanishing",
                "base_vanishing",
                "stripped_generators",
                "monomial_factors",
                "generators",
                "warnings",
                "assumed",
            ],
            "properties": {
                "vertex_vanishing": {"type": "array", "items": {"type": "integer"}},
                "base_vanishing": {"type": "array", "items": {"type": "integer"}},
                "stripped_generators": {"type": "array", "items": _POLY_OUT},
                "monomial_factors": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                "generators": {"type": "array", "items": _POLY_OUT},
                "warnings": {"type": "array", "items": {"type": "string"}},
                "assumed": {"type": "array", "items": {"type": "string"}},
            },
        },
    },
    "simulate": {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "simulate",
        "payload": {
            "type": "object",
            "required": ["matrix", "steps"],
            "properties": {
                "matrix": _MATRIX_IN,
                "steps": {"type": "integer", "minimum": 1},
                "compare": {"type": "boolean"},
            },
        },
        "result": {
            "type": "object",
            "required": ["degrees"],
            "properties": {
                "degrees": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "predicted": {"type": "string"},
                "empirical": {"type": "string"},
                "agree": {"type": "boolean"},
                "map": {
                    "type": "object",
                    "properties": {
                        "components": {"type": "array"},
                        "torus_matrix": _MATRIX_OUT,
                        "degree": {"type": "integer"},
                    },
                },
            },
        },
    },
}


def schema_for(command: str) -> dict:
    if command not in SCHEMAS:
        raise InputError(f"no schema for command {command!r}")
    return SCHEMAS[command]
