"""JSON workspaces: an algebra plus named modules, maps, complexes, classes and a corpus.

Files carry ``"schema": "relhom/1"``.  Everything is validated on load and
errors name the offending location, e.g. ``morphisms.f``.  ``save`` writes a
canonical form (sorted keys, two-space indent), so a canonical file
round-trips byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from . import catalog
from .complexes import Complex, ComplexError
from .cotorsion import CotorsionPairSpec
from .modules import Module, ModuleError, Morphism, is_isomorphic
from .quiver import Algebra, AlgebraError, build_algebra
from .relative import BalancedPair, Subcategory

SCHEMA = "relhom/1"
SECTIONS = ("schema", "name", "algebra", "settings", "modules", "morphisms", "complexes",
            "subcategories", "pairs", "cotorsion", "corpus", "provenance")


class WorkspaceError(ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass
class Settings:
    p: int = 2
    depth: int = 8
    cap: int = 6
    samples: int = 20
    seed: int = 0
    maxdeg: int = 4


@dataclass
class Workspace:
    name: str
    algebra: Algebra
    algebra_spec: dict
    settings: Settings = field(default_factory=Settings)
    modules: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    complexes: dict = field(default_factory=dict)
    subcategories: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    cotorsion: dict = field(default_factory=dict)
    corpus: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    declared: dict = field(default_factory=dict)   # raw reference sections, kept for saving

    # -- lookup -----------------------------------------------------------

    def module(self, name: str) -> Module:
        if name in self.modules:
            return self.modules[name]
        try:
            return catalog.lookup_module(self.algebra, name, self.corpus)
        except KeyError:
            raise WorkspaceError("modules", f"unknown module {name!r}")

    def _get(self, table: dict, kind: str, name: str):
        if name not in table:
            raise WorkspaceError(kind, f"unknown {kind[:-1] if kind.endswith('s') else kind} "
                                       f"{name!r}; known: {sorted(table)}")
        return table[name]

    def sub(self, name: str) -> Subcategory:
        return self._get(self.subcategories, "subcategories", name)

    def pair(self, name: str) -> BalancedPair:
        return self._get(self.pairs, "pairs", name)

    def spec(self, name: str) -> CotorsionPairSpec:
        return self._get(self.cotorsion, "cotorsion", name)

    def complex(self, name: str) -> Complex:
        return self._get(self.complexes, "complexes", name)

    def rng(self, seed: Optional[int] = None) -> np.random.Generator:
        return np.random.default_rng(self.settings.seed if seed is None else seed)

    # -- corpus -------------------------------------------------------------

    def extend_corpus(self, m: Module, produced_by: str, prefix: str = "K") -> Module:
        """Add ``m`` unless an isomorphic module is present; the new entry
        records the operation that produced it."""
        if m.is_zero():
            return m
        for n in self.corpus:
            if is_isomorphic(m, n) is not None:
                return n
        k = 1
        while f"{prefix}{k}" in self.modules or any(c.name == f"{prefix}{k}" for c in self.corpus):
            k += 1
        named = m.renamed(f"{prefix}{k}")
        self.modules[named.name] = named
        self.corpus.append(named)
        self.provenance[named.name] = produced_by
        return named

    # -- serialization --------------------------------------------------------

    def _is_builtin_name(self, m: Module) -> bool:
        try:
            return m.name not in self.modules and catalog.lookup_module(self.algebra, m.name) == m
        except KeyError:
            return False

    def to_dict(self) -> dict:
        alg = self.algebra
        mods = dict(self.modules)
        for m in self.corpus:
            if m.name not in mods and not self._is_builtin_name(m):
                mods[m.name] = m
        return {
            "schema": SCHEMA,
            "name": self.name,
            "algebra": self.algebra_spec,
            "settings": asdict(self.settings),
            "modules": {k: {"dims": list(m.dims),
                            "arrows": {a.label: m.mats[i].tolist()
                                       for i, a in enumerate(alg.quiver.arrows)}}
                        for k, m in mods.items()},
            "morphisms": {k: {"source": f.source.name, "target": f.target.name,
                              "blocks": [b.tolist() for b in f.blocks]}
                          for k, f in self.morphisms.items()},
            "complexes": self.declared.get("complexes", {}),
            "subcategories": self.declared.get("subcategories", {}),
            "pairs": self.declared.get("pairs", {}),
            "cotorsion": self.declared.get("cotorsion", {}),
            "corpus": [m.name for m in self.corpus],
            "provenance": dict(self.provenance),
        }


def dumps(ws: Workspace) -> str:
    return json.dumps(ws.to_dict(), indent=2, sort_keys=True) + "\n"


def save(ws: Workspace, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(ws))


# ---------------------------------------------------------------------------
# Loading


def _require(obj: Any, kind: type, location: str):
    if not isinstance(obj, kind):
        raise WorkspaceError(location, f"expected {kind.__name__}, got {type(obj).__name__}")
    return obj


def _int(obj: Any, location: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise WorkspaceError(location, f"expected an integer, got {obj!r}")
    return obj


def _matrix(obj: Any, rows: int, cols: int, location: str) -> np.ndarray:
    _require(obj, list, location)
    try:
        arr = np.array(obj, dtype=np.int64)
    except (TypeError, ValueError):
        raise WorkspaceError(location, "matrix entries must be integers")
    if arr.size != rows * cols or (arr.size and arr.shape != (rows, cols)):
        raise WorkspaceError(location, f"expected a {rows}x{cols} matrix, got shape {arr.shape}")
    return arr.reshape(rows, cols)


def _load_algebra(spec: Any, settings: Settings) -> tuple[Algebra, Optional[str]]:
    spec = _require(spec, dict, "algebra")
    if "builtin" in spec:
        name = spec["builtin"]
        if name not in catalog.ALGEBRA_SPECS:
            raise WorkspaceError("algebra.builtin", f"unknown builtin {name!r}")
        if settings.p != 2:
            raise WorkspaceError("settings.p", "builtin algebras are defined over F_2")
        return catalog.entry(name, settings.seed, settings.cap).algebra, name
    n = _int(spec.get("vertices"), "algebra.vertices")
    arrows = []
    for k, a in enumerate(_require(spec.get("arrows", []), list, "algebra.arrows")):
        loc = f"algebra.arrows[{k}]"
        if not (isinstance(a, list) and len(a) == 3):
            raise WorkspaceError(loc, "arrow must be [source, target, label]")
        s, t = _int(a[0], loc + ".source"), _int(a[1], loc + ".target")
        if not (1 <= s <= n and 1 <= t <= n):
            raise WorkspaceError(loc, f"vertex out of range 1..{n}")
        arrows.append((s - 1, t - 1, str(a[2])))
    rels = []
    for k, r in enumerate(_require(spec.get("relations", []), list, "algebra.relations")):
        terms = []
        for j, term in enumerate(_require(r, list, f"algebra.relations[{k}]")):
            loc = f"algebra.relations[{k}][{j}]"
            if not (isinstance(term, list) and len(term) == 2 and isinstance(term[1], list)):
                raise WorkspaceError(loc, "term must be [coefficient, [labels...]]")
            terms.append((_int(term[0], loc), [str(w) for w in term[1]]))
        rels.append(terms)
    try:
        alg = build_algebra(n, arrows, rels, cap=_int(spec.get("cap", 6), "algebra.cap"),
                            p=settings.p, name=str(spec.get("name", "")))
    except (AlgebraError, KeyError, ValueError) as exc:
        raise WorkspaceError("algebra", str(exc))
    return alg, None


def _load_settings(obj: Any) -> Settings:
    obj = _require(obj if obj is not None else {}, dict, "settings")
    known = {f.name for f in fields(Settings)}
    for k in obj:
        if k not in known:
            raise WorkspaceError(f"settings.{k}", "unknown setting")
    return Settings(**{k: _int(v, f"settings.{k}") for k, v in obj.items()})


def from_dict(data: Any, source: str = "<dict>") -> Workspace:
    data = _require(data, dict, "workspace")
    if data.get("schema") != SCHEMA:
        raise WorkspaceError("schema", f"expected {SCHEMA!r}, got {data.get('schema')!r}")
    for k in data:
        if k not in SECTIONS:
            raise WorkspaceError(k, "unknown section")
    settings = _load_settings(data.get("settings"))
    alg, builtin = _load_algebra(data.get("algebra"), settings)
    ws = Workspace(str(data.get("name", source)), alg, data["algebra"], settings)

    # implicit registrations: proj, inj and the classical pair; catalog extras for builtins
    if builtin is not None:
        entry = catalog.entry(builtin, settings.seed, settings.cap)
        ws.subcategories.update(entry.subcategories)
        ws.pairs.update(entry.pairs)
        ws.cotorsion.update(entry.cotorsion)
    else:
        proj = Subcategory("proj", tuple(alg.projectives()), contains_projectives=True)
        inj = Subcategory("inj", tuple(alg.injectives()), contains_injectives=True)
        ws.subcategories.update(proj=proj, inj=inj)
        classical = BalancedPair("classical", proj, inj)
        ws.pairs.update(classical=classical, proj=classical)

    arrows = alg.quiver.arrows
    for name, spec in _require(data.get("modules", {}), dict, "modules").items():
        loc = f"modules.{name}"
        spec = _require(spec, dict, loc)
        dims = [_int(d, f"{loc}.dims[{k}]") for k, d in
                enumerate(_require(spec.get("dims"), list, f"{loc}.dims"))]
        if len(dims) != alg.vertices or any(d < 0 for d in dims):
            raise WorkspaceError(f"{loc}.dims", f"need {alg.vertices} non-negative dimensions")
        given = _require(spec.get("arrows", {}), dict, f"{loc}.arrows")
        for label in given:
            if label not in {a.label for a in arrows}:
                raise WorkspaceError(f"{loc}.arrows.{label}", "unknown arrow")
        mats = []
        for a in arrows:
            if a.label not in given:
                raise WorkspaceError(f"{loc}.arrows", f"missing matrix for arrow {a.label!r}")
            mats.append(_matrix(given[a.label], dims[a.target], dims[a.source],
                                f"{loc}.arrows.{a.label}"))
        try:
            ws.modules[name] = Module(alg, dims, mats, name=name)
        except ModuleError as exc:
            raise WorkspaceError(loc, str(exc))

    def ref(name: Any, location: str) -> Module:
        if not isinstance(name, str):
            raise WorkspaceError(location, "module reference must be a string")
        try:
            return ws.module(name)
        except WorkspaceError:
            raise WorkspaceError(location, f"dangling module reference {name!r}")

    for name, spec in _require(data.get("morphisms", {}), dict, "morphisms").items():
        loc = f"morphisms.{name}"
        spec = _require(spec, dict, loc)
        src, tgt = ref(spec.get("source"), f"{loc}.source"), ref(spec.get("target"), f"{loc}.target")
        blocks = _require(spec.get("blocks"), list, f"{loc}.blocks")
        if len(blocks) != alg.vertices:
            raise WorkspaceError(f"{loc}.blocks", f"need one block per vertex ({alg.vertices})")
        mats = [_matrix(b, tgt.dims[v], src.dims[v], f"{loc}.blocks[{v}]") for v, b in enumerate(blocks)]
        try:
            ws.morphisms[name] = Morphism(src, tgt, mats)
        except ModuleError as exc:
            raise WorkspaceError(loc, str(exc))

    raw_complexes = _require(data.get("complexes", {}), dict, "complexes")
    for name, spec in raw_complexes.items():
        loc = f"complexes.{name}"
        spec = _require(spec, dict, loc)
        lo = _int(spec.get("lo", 0), f"{loc}.lo")
        terms = [ref(t, f"{loc}.terms[{k}]") for k, t in
                 enumerate(_require(spec.get("terms"), list, f"{loc}.terms"))]
        diffs = []
        for k, d in enumerate(_require(spec.get("differentials", []), list, f"{loc}.differentials")):
            if d not in ws.morphisms:
                raise WorkspaceError(f"{loc}.differentials[{k}]", f"dangling morphism reference {d!r}")
            diffs.append(ws.morphisms[d])
        try:
            ws.complexes[name] = Complex(alg, lo, terms, diffs)
        except ComplexError as exc:
            raise WorkspaceError(loc, str(exc))

    raw_subs = _require(data.get("subcategories", {}), dict, "subcategories")
    for name, spec in raw_subs.items():
        loc = f"subcategories.{name}"
        gens = _require(spec, dict, loc).get("generators")
        if isinstance(gens, str) and gens.startswith("builtin:"):
            key = gens.split(":", 1)[1]
            if key not in ws.subcategories:
                raise WorkspaceError(f"{loc}.generators", f"unknown builtin class {gens!r}")
            base = ws.subcategories[key]
            ws.subcategories[name] = Subcategory(name, base.generators, spec.get("role", "both"),
                                                 base.contains_projectives, base.contains_injectives)
            continue
        mods = tuple(ref(g, f"{loc}.generators[{k}]") for k, g in
                     enumerate(_require(gens, list, f"{loc}.generators")))
        try:
            ws.subcategories[name] = Subcategory(name, mods, spec.get("role", "both"))
        except ValueError as exc:
            raise WorkspaceError(loc, str(exc))

    raw_pairs = _require(data.get("pairs", {}), dict, "pairs")
    for name, spec in raw_pairs.items():
        loc = f"pairs.{name}"
        spec = _require(spec, dict, loc)
        for side in ("x", "y"):
            if spec.get(side) not in ws.subcategories:
                raise WorkspaceError(f"{loc}.{side}", f"dangling subcategory reference {spec.get(side)!r}")
        ws.pairs[name] = BalancedPair(name, ws.subcategories[spec["x"]], ws.subcategories[spec["y"]])

    raw_cot = _require(data.get("cotorsion", {}), dict, "cotorsion")
    for name, spec in raw_cot.items():
        loc = f"cotorsion.{name}"
        spec = _require(spec, dict, loc)
        for side in ("c", "d"):
            if spec.get(side) not in ws.subcategories:
                raise WorkspaceError(f"{loc}.{side}", f"dangling subcategory reference {spec.get(side)!r}")
        if spec.get("pair") not in ws.pairs:
            raise WorkspaceError(f"{loc}.pair", f"dangling pair reference {spec.get('pair')!r}")
        ws.cotorsion[name] = CotorsionPairSpec(name, ws.subcategories[spec["c"]],
                                               ws.subcategories[spec["d"]], ws.pairs[spec["pair"]],
                                               depth=settings.depth)
    ws.declared = {"complexes": raw_complexes, "subcategories": raw_subs, "pairs": raw_pairs,
                   "cotorsion": raw_cot}

    corpus = data.get("corpus", "default")
    if corpus == "default":
        for m in catalog.default_corpus(alg, ws.rng()):
            ws.corpus.append(m)
            if not ws._is_builtin_name(m):
                ws.modules[m.name] = m
                ws.provenance[m.name] = "default corpus: cokernel of a seeded map between projectives"
    else:
        ws.corpus = [ref(n, f"corpus[{k}]") for k, n in
                     enumerate(_require(corpus, list, "corpus"))]
    prov = _require(data.get("provenance", {}), dict, "provenance")
    for k, v in prov.items():
        if k not in ws.modules:
            raise WorkspaceError(f"provenance.{k}", "provenance for an unknown module")
        ws.provenance[k] = str(v)
    return ws


def load_workspace(path: Union[str, Path]) -> Workspace:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise WorkspaceError(str(path), f"cannot read file ({exc.strerror})")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"{path}:{exc.lineno}:{exc.colno}", f"invalid JSON ({exc.msg})")
    return from_dict(data, source=path.stem)


def builtin_workspace(name: str, seed: int = 0) -> Workspace:
    """Workspace over a builtin algebra with its default corpus."""
    if name not in catalog.ALGEBRA_SPECS:
        raise WorkspaceError("algebra.builtin", f"unknown builtin {name!r}")
    return from_dict({"schema": SCHEMA, "name": name, "algebra": {"builtin": name},
                      "settings": {"seed": seed}})


def open_workspace(ref: str, seed: Optional[int] = None) -> Workspace:
    """A file path, or the name of a builtin algebra."""
    path = Path(ref)
    if path.exists():
        return load_workspace(path)
    if ref in catalog.ALGEBRA_SPECS:
        return builtin_workspace(ref, seed or 0)
    raise WorkspaceError(ref, "no such file or builtin algebra")
