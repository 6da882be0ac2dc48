"""JSON formats: monoid and DFA input, versioned certificates.

Monoid input::

    {"states": ["s0", "s1"], "generators": {"a": [1, 0], "b": [0, 0]}}

where ``generators[name][i]`` is the index of ``s_i . name``.  A DFA uses
``"alphabet"`` and ``"transitions"`` (same row convention) instead of
``"generators"``; extra keys such as ``"start"`` or ``"accept"`` are ignored.
An abstract monoid with a possibly unfaithful action is given by
``"table"`` (``table[m][n]`` is the index of ``mn``), ``"action"``
(``action[m][i]`` is the index of ``s_i . m``), optional ``"identity"`` and
optional ``"generators"`` as a name -> element index mapping.
"""

from __future__ import annotations

import json
import re
from pathlib import Path


from .division import CoveringCertificate
from .errors import CertificateError, DimensionError, DomainError, FormatError
from .tmonoid import Dfa, MonoidAction, StateSet, TMonoid, compose, generate, transition_monoid
from .wreath import ProductSpace, WreathElement

CERTIFICATE_FORMAT = "krdecomp-certificate"
CERTIFICATE_VERSION = 1


def _line_of(text: str, key: str) -> int | None:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    if m is None:
        return None
    return text.count("\n", 0, m.start()) + 1


def _fail(source, text, field, msg):
    line = _line_of(text, field.split(".")[-1]) if text else None
    where = f"{source}:{line}" if line else str(source)
    raise FormatError(f"{where}: field '{field}': {msg}")


def _read(path_or_text):
    if isinstance(path_or_text, dict):
        return path_or_text, "", "<dict>"
    p = Path(path_or_text) if not str(path_or_text).lstrip().startswith(("{", "[")) else None
    if p is not None:
        try:
            text = p.read_text()
        except OSError as exc:
            raise FormatError(f"{p}: cannot read: {exc.strerror or exc}") from exc
        source = str(p)
    else:
        text, source = str(path_or_text), "<string>"
    try:
        return json.loads(text), text, source
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc


def _states(doc, text, source):
    labels = doc.get("states")
    if isinstance(labels, int) and labels >= 1:
        return StateSet.range(labels)
    if not isinstance(labels, list) or not labels:
        _fail(source, text, "states", "expected a non-empty list of labels")
    try:
        return StateSet(tuple(str(x) for x in labels))
    except DomainError as exc:
        _fail(source, text, "states", str(exc))


def _row(row, n, source, text, field):
    if not isinstance(row, list) or len(row) != n:
        _fail(source, text, field, f"expected a list of {n} state indices")
    if not all(isinstance(v, int) and not isinstance(v, bool) and 0 <= v < n for v in row):
        _fail(source, text, field, f"entries must be state indices in 0..{n - 1}")
    return tuple(row)


def load_input(path_or_text):
    """Parse a monoid, DFA or monoid-action document.

    Returns a :class:`TMonoid` or, for abstract monoid input, a
    :class:`MonoidAction`.
    """
    doc, text, source = _read(path_or_text)
    if not isinstance(doc, dict):
        raise FormatError(f"{source}: top level must be a JSON object")
    states = _states(doc, text, source)
    n = states.size
    if "table" in doc:
        return _load_action(doc, text, source, states)
    if "transitions" in doc:
        alphabet = doc.get("alphabet", list(doc["transitions"]))
        if not isinstance(alphabet, list):
            _fail(source, text, "alphabet", "expected a list of letters")
        trans = doc["transitions"]
        if not isinstance(trans, dict):
            _fail(source, text, "transitions", "expected an object keyed by letter")
        rows = {}
        for a in alphabet:
            if str(a) not in trans:
                _fail(source, text, "transitions", f"no row for letter {a!r}")
            rows[a] = _row(trans[str(a)], n, source, text, f"transitions.{a}")
        return transition_monoid(Dfa(states, list(alphabet), rows))
    gens = doc.get("generators")
    if not isinstance(gens, dict):
        _fail(source, text, "generators", "expected an object mapping names to transformations")
    maps = [_row(row, n, source, text, f"generators.{name}") for name, row in gens.items()]
    return generate(states, maps, list(gens))


def _load_action(doc, text, source, states):
    table, action = doc["table"], doc.get("action")
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        _fail(source, text, "table", "expected a square list of lists")
    if not isinstance(action, list):
        _fail(source, text, "action", "expected one row of state indices per element")
    k = len(table)
    rows = [_row(r, k, source, text, "table") for r in table]
    acts = [_row(r, states.size, source, text, "action") for r in action]
    gens = doc.get("generators")
    if gens is not None and not isinstance(gens, dict):
        _fail(source, text, "generators", "expected an object mapping names to element indices")
    try:
        return MonoidAction(states, rows, acts, int(doc.get("identity", 0)),
                            list(gens.values()) if gens else None,
                            list(gens) if gens else None)
    except (DomainError, DimensionError) as exc:
        raise FormatError(f"{source}: {exc}") from exc


def monoid_to_json(tm: TMonoid) -> dict:
    return {
        "states": list(tm.states.labels),
        "generators": {name: list(t) for name, t in zip(tm.generator_names, tm.generator_maps)},
    }


def monoid_from_elements(states: StateSet, elements) -> TMonoid:
    """A TMonoid with the given element order; element 0 must be the identity."""
    elements = [tuple(int(v) for v in e) for e in elements]
    n = states.size
    if not elements or elements[0] != tuple(range(n)):
        raise CertificateError("factor element 0 is not the identity")
    if any(len(e) != n or min(e) < 0 or max(e) >= n for e in elements):
        raise CertificateError("factor element is not a transformation of its states")
    index = set(elements)
    if len(index) != len(elements):
        raise CertificateError("factor elements are not distinct")
    for f in elements:
        for g in elements:
            if compose(f, g) not in index:
                raise CertificateError("factor elements are not closed under composition")
    words = [()] + [(i,) for i in range(len(elements) - 1)]
    return TMonoid(states, elements, range(1, len(elements)), words)


def certificate_to_json(cert: CoveringCertificate) -> dict:
    if isinstance(cert.target, ProductSpace):
        raise CertificateError("only certificates onto a monoid can be serialized")
    names = list(cert.names)
    if len(set(names)) != len(names):
        raise CertificateError("generator names must be distinct to key the cover tables")
    covers = {}
    for name, cover, flat in zip(names, cert.covers, cert.flats):
        covers[name] = {
            "flat": flat.tolist(),
            "cascade": [c.tolist() for c in cover.components],
        }
    return {
        "format": CERTIFICATE_FORMAT,
        "version": CERTIFICATE_VERSION,
        "kind": cert.kind,
        "target": {
            "states": list(cert.target.states.labels),
            "generators": {name: m.tolist() for name, m in zip(names, cert.target_maps)},
        },
        "source": {
            "factors": [{"states": list(f.states.labels), "elements": [list(e) for e in f.elements]}
                        for f in cert.source.factors],
        },
        "phi": cert.phi.tolist(),
        "covers": covers,
    }


def certificate_from_json(doc, cap=None) -> CoveringCertificate:
    """Rebuild a certificate; the tables are taken verbatim, not recomputed."""
    if not isinstance(doc, dict):
        doc, _, source = _read(doc)
    if doc.get("format") != CERTIFICATE_FORMAT:
        raise FormatError(f"not a certificate file (format={doc.get('format')!r})")
    if doc.get("version") != CERTIFICATE_VERSION:
        raise FormatError(f"unsupported certificate version {doc.get('version')!r}")
    try:
        tdoc = doc["target"]
        tstates = StateSet(tuple(tdoc["states"]))
        names = list(tdoc["generators"])
        maps = [tuple(tdoc["generators"][k]) for k in names]
        target = generate(tstates, maps, names)
        factors = [monoid_from_elements(StateSet(tuple(f["states"])), f["elements"])
                   for f in doc["source"]["factors"]]
        space = ProductSpace(factors, cap=cap)
        covers, flats = [], []
        for name in names:
            entry = doc["covers"][name]
            covers.append(WreathElement(space, entry["cascade"]))
            flats.append(entry["flat"])
        phi = doc["phi"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"certificate is missing or mistypes field {exc}") from exc
    except (DomainError, DimensionError) as exc:
        raise FormatError(f"certificate: {exc}") from exc
    cert = CoveringCertificate(target, space, phi, covers, names=names, target_maps=maps,
                               kind=doc.get("kind", ""), flats=flats)
    return cert


def save_certificate(cert: CoveringCertificate, path):
    Path(path).write_text(json.dumps(certificate_to_json(cert)))


def load_certificate(path, cap=None) -> CoveringCertificate:
    doc, _, _ = _read(Path(path))
    return certificate_from_json(doc, cap=cap)


def check_against_monoid(cert: CoveringCertificate, tm) -> str | None:
    """Why ``cert`` does not certify ``tm``, or None if its target matches."""
    if cert.target.n_states != tm.n_states:
        return f"certificate target has {cert.target.n_states} states, monoid has {tm.n_states}"
    mine = {name: tuple(int(v) for v in m) for name, m in zip(cert.names, cert.target_maps)}
    for name, t in zip(tm.generator_names, tm.generator_maps):
        if mine.get(name) != tuple(t):
            return f"generator {name} of the monoid is not covered by the certificate"
    return None
