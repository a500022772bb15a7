"""JSON serialization of fitted parameter sets.

Field names follow the distribution symbols so documents are
self-describing; fitted models can be stored and reloaded to reuse
expensive fits (and their Monte Carlo machinery) across runs.
"""

from __future__ import annotations

import json

import numpy as np

from .burr import BurrParams
from .copula import CopulaModel
from .gaussian import GaussianParams
from .gh import GHParams
from ..numerics import EmpiricalMargin

__all__ = ["params_to_dict", "params_from_dict", "save_params", "load_params"]


def params_to_dict(params) -> dict:
    if isinstance(params, GaussianParams):
        return {"family": "gaussian", "mu": params.mu.tolist(),
                "sigma": params.sigma.tolist()}
    if isinstance(params, BurrParams):
        return {"family": "burr", "kappa": params.kappa,
                "b": params.b.tolist(), "r": params.r.tolist()}
    if isinstance(params, GHParams):
        return {"family": "gh", "lambda": params.lam, "chi": params.chi,
                "psi": params.psi, "mu": params.mu.tolist(),
                "sigma": params.sigma.tolist(), "beta": params.beta.tolist()}
    if isinstance(params, CopulaModel):
        return {"family": "copula",
                "margins": [m.sorted.tolist() for m in params.margins],
                "gauss": params_to_dict(params.gauss)}
    raise TypeError(f"cannot serialize {type(params).__name__}")


def params_from_dict(doc: dict):
    family = doc["family"]
    if family == "gaussian":
        return GaussianParams(mu=np.array(doc["mu"]), sigma=np.array(doc["sigma"]))
    if family == "burr":
        return BurrParams(kappa=doc["kappa"], b=np.array(doc["b"]), r=np.array(doc["r"]))
    if family == "gh":
        return GHParams(lam=doc["lambda"], chi=doc["chi"], psi=doc["psi"],
                        mu=np.array(doc["mu"]), sigma=np.array(doc["sigma"]),
                        beta=np.array(doc["beta"]))
    if family == "copula":
        margins = tuple(EmpiricalMargin(np.array(v)) for v in doc["margins"])
        return CopulaModel(margins=margins, gauss=params_from_dict(doc["gauss"]))
    raise ValueError(f"unknown family {family!r}")


def save_params(params, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(params_to_dict(params), fh, indent=2)


def load_params(path):
    with open(path, encoding="utf-8") as fh:
        return params_from_dict(json.load(fh))
