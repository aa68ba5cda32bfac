"""Pole structure of a J-function: locations, orders and component support."""

from ..exact import RootLabel
from ..report import Report
from ..series import component_name

MAX_POLE_ORDER = 3


def _pole_list(f):
    return sorted(f.pole_orders().items())


def pole_report(J, max_root_order=None, max_order=MAX_POLE_ORDER):
    """Check every coefficient: poles only at n-th roots of unity with n <= D,
    order <= max_order, no pole at q = 0, and instanton terms supported on
    the upper-index components Phi^{01}, Phi^{1j}."""
    D = J.cutoff if max_root_order is None else max_root_order
    rep = Report("verify poles", {"cutoff": J.cutoff, "max_root_order": D, "max_order": max_order})
    best = 0
    attained = []
    violations = 0
    for beta, comp, mono, f in J.entries():
        loc = [list(beta), component_name(comp), list(mono)]
        poles = _pole_list(f)
        top = max((e for _, e in poles), default=0)
        bad_roots = [n for n, _ in poles if n > max(D, 1)]
        ok = top <= max_order and not bad_roots and f.qpow == 0
        if any(beta) and not (comp[0] == "up" and comp[1] in (0, 1)):
            ok = False
        witness = {"poles": "; ".join(f"n={n}:{e}" for n, e in poles) or "none",
                   "max_order": top}
        if f.qpow:
            witness["pole_at_zero"] = f.qpow
        rep.add("pole-bound", loc, ok, witness)
        if not ok:
            violations += 1
        if top > best:
            best, attained = top, []
        if top == best and top:
            attained.append(loc)
    rep.data = {"max_order": best, "attained_at": attained[:20], "attained_count": len(attained),
                "violations": violations}
    return rep


def pole_locations(f):
    """[(root label, order)] over every primitive root of each order."""
    out = []
    for n, e in _pole_list(f):
        for root in RootLabel.primitive(n):
            out.append((root, e))
    return out
