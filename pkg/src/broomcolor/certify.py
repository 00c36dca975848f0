"""Certificates and an independent verifier.

The verifier only uses graph primitives, the exact oracles, the witness
checkers and the bound arithmetic.  It never calls into the decomposition or
the colourer, so a bug there cannot vouch for itself.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from broomcolor.bounds import BoundFunction, certified_bound
from broomcolor.detect import Witness, verify_witness, witness_from_json
from broomcolor.errors import InputError, ParseError
from broomcolor.graph import Coloring, Graph
from broomcolor.oracle import omega as clique_size

CERT_VERSION = 1
COLORED = "Colored"
NOT_IN_CLASS = "NotInClass"


def graph_hash(G: Graph) -> str:
    """sha256 over the canonical edge list ``n`` then ``u v`` lines, u < v."""
    h = hashlib.sha256()
    h.update(f"{G.n}\n".encode())
    for u, v in G.edges():
        h.update(f"{u} {v}\n".encode())
    return h.hexdigest()


@dataclass
class CertifiedResult:
    verdict: str
    t: int
    mode: str
    omega: int
    bound: int
    graph_hash: str
    coloring: Coloring | None = None
    witness: Witness | None = None
    trace: dict[str, Any] = field(default_factory=dict)

    @property
    def colors_used(self) -> int | None:
        return None if self.coloring is None else self.coloring.colors_used

    def to_json(self, n: int | None = None) -> dict:
        if n is None and self.coloring is not None:
            n = len(self.coloring.assignment)
        colors = None
        if self.coloring is not None:
            colors = [self.coloring.assignment[v] for v in range(n)]
        return {
            "version": CERT_VERSION,
            "graph_hash": self.graph_hash,
            "t": self.t,
            "mode": self.mode,
            "verdict": self.verdict,
            "omega": self.omega,
            "bound": self.bound,
            "colors": colors,
            "witness": None if self.witness is None else self.witness.to_json(),
            "trace": self.trace,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CertifiedResult":
        try:
            if data["version"] != CERT_VERSION:
                raise ParseError(f"unsupported certificate version {data['version']!r}")
            colors = data.get("colors")
            witness = data.get("witness")
            return cls(
                verdict=data["verdict"],
                t=int(data["t"]),
                mode=data["mode"],
                omega=int(data["omega"]),
                bound=int(data["bound"]),
                graph_hash=data["graph_hash"],
                coloring=None if colors is None else Coloring({v: int(c) for v, c in enumerate(colors)}),
                witness=None if witness is None else witness_from_json(witness),
                trace=data.get("trace") or {},
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed certificate: {exc}") from exc


def emit_cert(cert: CertifiedResult, n: int | None = None) -> str:
    return json.dumps(cert.to_json(n), sort_keys=True, separators=(",", ":"))


def parse_cert(text: str) -> CertifiedResult:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"certificate is not JSON: {exc.msg}", exc.lineno) from exc
    if not isinstance(data, dict):
        raise ParseError("certificate must be a JSON object")
    return CertifiedResult.from_json(data)


# ---------------------------------------------------------------------------


@dataclass
class VerificationReport:
    accepted: bool
    checks: dict[str, bool]
    failures: list[str]

    def __bool__(self) -> bool:
        return self.accepted


def _sharing_entries(trace: dict):
    stack = [trace]
    while stack:
        node = stack.pop()
        if not isinstance(node, dict):
            continue
        for entry in node.get("sharing", ()):
            yield entry
        stack.extend(node.get("children", ()))
        if "root" in node:
            stack.append(node["root"])


def verify(G: Graph, cert: CertifiedResult) -> VerificationReport:
    """Re-derive every claim in ``cert`` for ``G``.

    Raises InputError when the certificate was issued for a different graph.
    """
    if cert.graph_hash != graph_hash(G):
        raise InputError("certificate graph hash does not match the input graph")
    checks: dict[str, bool] = {}
    failures: list[str] = []

    def check(name: str, ok: bool, why: str = "") -> None:
        checks[name] = ok
        if not ok:
            failures.append(f"{name}: {why}" if why else name)

    w = clique_size(G)
    check("omega", cert.omega == w, f"certificate says {cert.omega}, recomputed {w}")
    try:
        expected = certified_bound(BoundFunction(cert.t, cert.mode), w)
    except InputError as exc:
        check("bound", False, str(exc))
        expected = None
    if expected is not None:
        check("bound", cert.bound == expected, f"certificate says {cert.bound}, recomputed {expected}")

    if cert.verdict == COLORED:
        col = cert.coloring
        if col is None:
            check("coloring_present", False, "Colored verdict without colours")
        else:
            total = len(col.assignment) == G.n and set(col.assignment) == set(range(G.n))
            check("coloring_total", total, f"{len(col.assignment)} colours for {G.n} vertices")
            bad = col.monochromatic_edge(G)
            check("proper", bad is None, f"monochromatic edge {bad}")
            used = col.colors_used
            check("within_bound", used <= cert.bound and (expected is None or used <= expected),
                  f"{used} colours exceed bound {cert.bound}")
        for entry in _sharing_entries(cert.trace):
            groups = [G.mask(g) for g in entry.get("groups", [])]
            ok = True
            for i in range(len(groups)):
                for j in range(i + 1, len(groups)):
                    if groups[i] & groups[j] or not G.anticomplete(groups[i], groups[j]):
                        ok = False
            if not ok:
                check("sharing", False, f"palette sharing '{entry.get('reason')}' joins adjacent vertices")
                break
        else:
            checks.setdefault("sharing", True)
    elif cert.verdict == NOT_IN_CLASS:
        wit = cert.witness
        if wit is None:
            check("witness_present", False, "NotInClass verdict without witness")
        else:
            check("witness", verify_witness(G, wit, cert.t), f"witness {wit.to_json()} does not induce the pattern")
    else:
        check("verdict", False, f"unknown verdict {cert.verdict!r}")

    return VerificationReport(not failures, checks, failures)
