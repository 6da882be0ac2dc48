"""Decomposition reports (JSON-ready dicts and plain text)."""

from __future__ import annotations

from .division import verify_covering
from .errors import CertificateError

REPORT_VERSION = 1


def _symbolic(cert):
    """Covers of a two-factor split as ``(f, n)`` with element labels."""
    left, right = cert.source.factors
    out = []
    for name, cover, flat in zip(cert.names, cert.covers, cert.flats):
        f = [left.word_label(int(e)) for e in cover.components[0]]
        entry = {"generator": name, "n": right.word_label(cover.n)}
        if len(set(f)) == 1:
            entry["f"] = f"const {f[0]}"
        else:
            entry["f"] = dict(zip(right.states.labels, f))
        entry["flat"] = flat.tolist()
        out.append(entry)
    return out


def _status(cert):
    if cert is None:
        return None
    try:
        rep = verify_covering(cert)
    except CertificateError as exc:
        return {"ok": False, "witness": str(getattr(exc, "witness", exc))}
    return {"ok": rep.ok, "witness": str(rep.witness) if rep.witness else None}


def _node(node, symbolic):
    base = node.base if node.base is not None else node.tm
    d = {
        "kind": node.kind,
        "side": node.side,
        "depth": node.depth,
        "states": base.n_states,
        "elements": len(base),
    }
    if node.chosen_c is not None:
        d["chosen_c"] = base.word_label(node.chosen_c)
    if node.certificate is not None:
        d["verified"] = _status(node.certificate)
        if symbolic and node.certificate.kind == "local-divisor-split":
            d["covers"] = _symbolic(node.certificate)
    if node.children:
        d["children"] = [_node(ch, symbolic) for ch in node.children]
    return d


def build_report(tm, seq, symbolic: bool = True) -> dict:
    gd = seq.group_decomposition
    ver = seq.verification
    n_m = len(tm)
    return {
        "report_version": REPORT_VERSION,
        "input": {
            "states": tm.n_states,
            "elements": n_m,
            "generators": list(tm.generator_names),
        },
        "factors": [{"kind": f.describe(), "order": f.order, "states": f.n_states} for f in seq.factors],
        "factor_count": len(seq),
        "flat_size": seq.flat_size,
        "bound": {"value": seq.bound, "holds": len(seq) < seq.bound},
        "group_stage": {
            "leaf_orders": [len(leaf.base) for leaf in gd.leaves],
            "sum": gd.group_sum,
            "limit": 2 ** n_m,
            "holds": gd.group_sum < 2 ** n_m,
        },
        "tree": _node(seq.tree, symbolic),
        "verification": None if ver is None else {
            "ok": ver.ok,
            "states": ver.states,
            "generators": ver.generators,
            "witness": str(ver.witness) if ver.witness else None,
        },
        "timings": {k: round(v, 6) for k, v in seq.timings.items()},
    }


def _tree_lines(d, indent=0):
    pad = "  " * indent
    line = f"{pad}{d['kind']} |X|={d['states']} |M|={d['elements']}"
    if "chosen_c" in d:
        line += f" c={d['chosen_c']}"
    if d.get("verified") is not None:
        line += " [ok]" if d["verified"]["ok"] else " [FAILED]"
    yield line
    for ch in d.get("children", []):
        yield from _tree_lines(ch, indent + 1)


def format_text(report: dict) -> str:
    inp = report["input"]
    kinds = [f["kind"] for f in report["factors"]]
    lines = [
        f"input: |X|={inp['states']} |M|={inp['elements']} generators={','.join(inp['generators'])}",
        f"factors ({report['factor_count']}): {' wr '.join(kinds) if kinds else '(empty wreath)'}",
        f"flat product space: {report['flat_size']} states",
        f"count bound: {report['factor_count']} < {report['bound']['value']}: "
        f"{'yes' if report['bound']['holds'] else 'NO'}",
        f"group leaves: orders {report['group_stage']['leaf_orders']}, "
        f"sum {report['group_stage']['sum']} < 2^{inp['elements']}: "
        f"{'yes' if report['group_stage']['holds'] else 'NO'}",
        "tree:",
    ]
    lines.extend(_tree_lines(report["tree"], 1))
    ver = report["verification"]
    if ver is not None:
        status = "OK" if ver["ok"] else f"FAILED ({ver['witness']})"
        lines.append(f"end-to-end verification: {status} over {ver['states']} states")
    lines.append("timings: " + ", ".join(f"{k} {v:.3f}s" for k, v in report["timings"].items()))
    return "\n".join(lines)
