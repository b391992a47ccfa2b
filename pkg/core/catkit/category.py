"""
Catégories finies à table de composition totale.
"""
import logging
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from core.utils.errors import ParameterError, UnsupportedInputError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arrow:
    name: Hashable
    source: int
    target: int


@dataclass(eq=False)
class FiniteCategory:
    """
    Catégorie finie explicite.

    Attributes:
        objects: Noms des objets
        arrows: Flèches (identités comprises)
        composition: ``(g, f) -> g∘f`` pour toute paire composable
        identities: Indice de l'identité de chaque objet
        name: Nom d'affichage
    """
    objects: Tuple[Hashable, ...]
    arrows: Tuple[Arrow, ...]
    composition: Dict[Tuple[int, int], int]
    identities: Tuple[int, ...]
    name: str = ""
    _homs: Dict[Tuple[int, int], List[int]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for index, arrow in enumerate(self.arrows):
            self._homs.setdefault((arrow.source, arrow.target), []).append(index)
        self._arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        self._object_index = {o: i for i, o in enumerate(self.objects)}
        if len(self._arrow_index) != len(self.arrows):
            raise ValidationError(f"Noms de flèches dupliqués dans {self.name}")

    def hom(self, x: int, y: int) -> List[int]:
        return self._homs.get((x, y), [])

    def compose(self, g: int, f: int) -> int:
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise ValidationError(f"Flèches non composables: {self.arrows[g].name}∘{self.arrows[f].name}") from None

    def arrow_index(self, name: Hashable) -> int:
        try:
            return self._arrow_index[name]
        except KeyError:
            raise ParameterError(f"Flèche inconnue: {name!r}") from None

    def object_index(self, name: Hashable) -> int:
        try:
            return self._object_index[name]
        except KeyError:
            raise ParameterError(f"Objet inconnu: {name!r}") from None

    def is_identity(self, a: int) -> bool:
        return self.identities[self.arrows[a].source] == a

    def inverse(self, a: int) -> Optional[int]:
        arrow = self.arrows[a]
        for b in self.hom(arrow.target, arrow.source):
            if (self.composition[(b, a)] == self.identities[arrow.source]
                    and self.composition[(a, b)] == self.identities[arrow.target]):
                return b
        return None

    def is_iso(self, a: int) -> bool:
        return self.inverse(a) is not None

    def isomorphisms(self) -> FrozenSet[int]:
        return frozenset(a for a in range(len(self.arrows)) if self.is_iso(a))

    def non_identity(self) -> List[int]:
        return [a for a in range(len(self.arrows)) if not self.is_identity(a)]

    def chains(self, n: int) -> List[Tuple[int, ...]]:
        """Suites composables de ``n`` flèches (identités comprises)."""
        if n == 0:
            return [()]
        found = [(a,) for a in range(len(self.arrows))]
        outgoing = self.outgoing()
        for _ in range(n - 1):
            found = [c + (b,) for c in found for b in outgoing[self.arrows[c[-1]].target]]
        return found

    def outgoing(self) -> Dict[int, List[int]]:
        """Flèches groupées par source."""
        table: Dict[int, List[int]] = {x: [] for x in range(len(self.objects))}
        for a, arrow in enumerate(self.arrows):
            table[arrow.source].append(a)
        return table

    def count_chains(self, n: int) -> int:
        """Nombre de suites composables de longueur ``n`` (programmation dynamique)."""
        if n == 0:
            return len(self.objects)
        ending = [0] * len(self.objects)
        for arrow in self.arrows:
            ending[arrow.target] += 1
        for _ in range(n - 1):
            nxt = [0] * len(self.objects)
            for arrow in self.arrows:
                nxt[arrow.target] += ending[arrow.source]
            ending = nxt
        return sum(ending)

    def validate(self) -> None:
        """Vérifie exhaustivement les lois d'unité et l'associativité."""
        outgoing = self.outgoing()
        for f, arrow in enumerate(self.arrows):
            ids, idt = self.identities[arrow.source], self.identities[arrow.target]
            if self.composition.get((f, ids)) != f or self.composition.get((idt, f)) != f:
                raise ValidationError(f"Loi d'unité violée pour {arrow.name!r}")
            for g in outgoing[arrow.target]:
                if (g, f) not in self.composition:
                    raise ValidationError(f"Composition manquante {self.arrows[g].name!r}∘{arrow.name!r}")
                gf = self.composition[(g, f)]
                if (self.arrows[gf].source, self.arrows[gf].target) != (arrow.source, self.arrows[g].target):
                    raise ValidationError(f"Composée mal typée {self.arrows[g].name!r}∘{arrow.name!r}")
        for (g, f), gf in self.composition.items():
            target = self.arrows[g].target
            for h in outgoing[target]:
                if self.composition[(h, gf)] != self.composition[(self.composition[(h, g)], f)]:
                    raise ValidationError(
                        f"Table non associative: {self.arrows[h].name!r}, {self.arrows[g].name!r}, "
                        f"{self.arrows[f].name!r}"
                    )


def _identity_name(obj: Hashable) -> Hashable:
    return f"id_{obj}" if isinstance(obj, str) else ("id", obj)


def category_from_table(objects: Sequence[Hashable], generators: Sequence[Tuple[Hashable, Hashable, Hashable]],
                        composites: Dict[Tuple[Hashable, Hashable], Hashable], name: str = "") -> FiniteCategory:
    """
    Catégorie donnée par sa table de composition (identités ajoutées).

    Args:
        objects: Noms des objets
        generators: Flèches non identités ``(nom, source, cible)``
        composites: ``(g, f) -> g∘f`` pour chaque paire composable de non-identités
        name: Nom d'affichage

    Returns:
        Catégorie validée
    """
    object_index = {o: i for i, o in enumerate(objects)}
    arrows = [Arrow(_identity_name(o), i, i) for i, o in enumerate(objects)]
    for arrow_name, src, tgt in generators:
        if src not in object_index or tgt not in object_index:
            raise ValidationError(f"Flèche {arrow_name!r}: objet inconnu")
        arrows.append(Arrow(arrow_name, object_index[src], object_index[tgt]))
    index = {a.name: i for i, a in enumerate(arrows)}
    identities = tuple(range(len(objects)))
    composition: Dict[Tuple[int, int], int] = {}
    for f, arrow in enumerate(arrows):
        composition[(f, identities[arrow.source])] = f
        composition[(identities[arrow.target], f)] = f
    for (g_name, f_name), h_name in composites.items():
        for n in (g_name, f_name, h_name):
            if n not in index:
                raise ValidationError(f"Flèche inconnue dans la table: {n!r}")
        g, f, h = index[g_name], index[f_name], index[h_name]
        if arrows[f].target != arrows[g].source:
            raise ValidationError(f"{g_name!r}∘{f_name!r} n'est pas composable")
        composition[(g, f)] = h
    category = FiniteCategory(tuple(objects), tuple(arrows), composition, identities, name)
    category.validate()
    return category


def poset_category(elements: Sequence[Hashable], relations: Iterable[Tuple[Hashable, Hashable]],
                   name: str = "") -> FiniteCategory:
    """
    Catégorie d'un ensemble ordonné fini (clôture réflexive-transitive).

    Raises:
        ValidationError: Si les relations forment un cycle
    """
    index = {e: i for i, e in enumerate(elements)}
    size = len(elements)
    le = [[i == j for j in range(size)] for i in range(size)]
    for a, b in relations:
        if a not in index or b not in index:
            raise ValidationError(f"Élément inconnu dans la relation {a!r} <= {b!r}")
        le[index[a]][index[b]] = True
    for k in range(size):
        for i in range(size):
            if le[i][k]:
                for j in range(size):
                    if le[k][j]:
                        le[i][j] = True
    for i in range(size):
        for j in range(i + 1, size):
            if le[i][j] and le[j][i]:
                raise ValidationError(f"Relation cyclique entre {elements[i]!r} et {elements[j]!r}")
    arrows: List[Arrow] = []
    pair_index: Dict[Tuple[int, int], int] = {}
    identities = []
    for i in range(size):
        pair_index[(i, i)] = len(arrows)
        identities.append(len(arrows))
        arrows.append(Arrow(_identity_name(elements[i]), i, i))
    for i in range(size):
        for j in range(size):
            if i != j and le[i][j]:
                pair_index[(i, j)] = len(arrows)
                arrows.append(Arrow(_pair_name(elements[i], elements[j]), i, j))
    composition = {}
    for (i, j), f in pair_index.items():
        for (j2, k), g in pair_index.items():
            if j2 == j:
                composition[(g, f)] = pair_index[(i, k)]
    category = FiniteCategory(tuple(elements), tuple(arrows), composition, tuple(identities), name)
    category.validate()
    return category


def _pair_name(a: Hashable, b: Hashable) -> Hashable:
    return f"{a}<={b}" if isinstance(a, str) and isinstance(b, str) else (a, b)


def chain_category(n: int) -> FiniteCategory:
    """L'ordinal [n] vu comme catégorie."""
    if n < 0:
        raise ParameterError(f"chain: n doit être >= 0 (reçu {n})")
    return poset_category(list(range(n + 1)), [(i, i + 1) for i in range(n)], f"[{n}]")


def free_category(objects: Sequence[Hashable], generators: Sequence[Tuple[Hashable, Hashable, Hashable]],
                  name: str = "") -> FiniteCategory:
    """
    Catégorie libre sur un graphe fini acyclique.

    Raises:
        UnsupportedInputError: Si le graphe contient un cycle
    """
    object_index = {o: i for i, o in enumerate(objects)}
    outgoing: Dict[int, List[int]] = {i: [] for i in range(len(objects))}
    for g, (_, src, tgt) in enumerate(generators):
        if src not in object_index or tgt not in object_index:
            raise ValidationError(f"Générateur {generators[g][0]!r}: objet inconnu")
        outgoing[object_index[src]].append(g)
    # détection de cycle par tri topologique
    indegree = [0] * len(objects)
    for _, _, tgt in generators:
        indegree[object_index[tgt]] += 1
    ready = [i for i, d in enumerate(indegree) if d == 0]
    seen = 0
    while ready:
        node = ready.pop()
        seen += 1
        for g in outgoing[node]:
            t = object_index[generators[g][2]]
            indegree[t] -= 1
            if indegree[t] == 0:
                ready.append(t)
    if seen != len(objects):
        raise UnsupportedInputError("Graphe cyclique: la catégorie libre serait infinie")
    paths: List[Tuple[int, ...]] = [(g,) for g in range(len(generators))]
    frontier = list(paths)
    while frontier:
        extended = []
        for path in frontier:
            last = object_index[generators[path[-1]][2]]
            extended.extend(path + (g,) for g in outgoing[last])
        paths.extend(extended)
        frontier = extended
    arrows = [Arrow(_identity_name(o), i, i) for i, o in enumerate(objects)]
    path_index: Dict[Tuple[int, ...], int] = {}
    for path in paths:
        arrow_name = "∘".join(str(generators[g][0]) for g in reversed(path))
        path_index[path] = len(arrows)
        arrows.append(Arrow(arrow_name, object_index[generators[path[0]][1]],
                            object_index[generators[path[-1]][2]]))
    identities = tuple(range(len(objects)))
    composition: Dict[Tuple[int, int], int] = {}
    for f, arrow in enumerate(arrows):
        composition[(f, identities[arrow.source])] = f
        composition[(identities[arrow.target], f)] = f
    for p in paths:
        for q in paths:
            if object_index[generators[p[-1]][2]] == object_index[generators[q[0]][1]]:
                composition[(path_index[q], path_index[p])] = path_index[p + q]
    category = FiniteCategory(tuple(objects), tuple(arrows), composition, identities, name)
    category.validate()
    return category


def indiscrete_category(objects: Sequence[Hashable], name: str = "") -> FiniteCategory:
    """Groupoïde indiscret: une unique flèche entre deux objets quelconques."""
    size = len(objects)
    arrows, pair_index, identities = [], {}, []
    for i in range(size):
        pair_index[(i, i)] = len(arrows)
        identities.append(len(arrows))
        arrows.append(Arrow(_identity_name(objects[i]), i, i))
    for i in range(size):
        for j in range(size):
            if i != j:
                pair_index[(i, j)] = len(arrows)
                arrows.append(Arrow(f"{objects[i]}->{objects[j]}", i, j))
    composition = {(pair_index[(j, k)], pair_index[(i, j)]): pair_index[(i, k)]
                   for i in range(size) for j in range(size) for k in range(size)}
    return FiniteCategory(tuple(objects), tuple(arrows), composition, tuple(identities), name or "indiscrete")


def terminal_category() -> FiniteCategory:
    return category_from_table(["*"], [], {}, "[0]")


def build_category(presentation: Dict) -> FiniteCategory:
    """
    Construit une catégorie depuis une présentation.

    Args:
        presentation: ``{"kind": "table"|"poset"|"free", ...}``

    Returns:
        Catégorie validée
    """
    kind = presentation.get("kind")
    name = presentation.get("name", "")
    if kind == "table":
        return category_from_table(presentation["objects"], presentation.get("arrows", []),
                                   presentation.get("composites", {}), name)
    if kind == "poset":
        return poset_category(presentation["objects"], presentation.get("relations", []), name)
    if kind == "free":
        return free_category(presentation["objects"], presentation.get("arrows", []), name)
    raise ParameterError(f"Présentation de catégorie inconnue: {kind!r}")


@dataclass(eq=False)
class RelativeCategory:
    """
    Catégorie relative ``(C, W)``; W contient les identités et est stable
    par composition.
    """
    base: FiniteCategory
    weak: FrozenSet[int]
    name: str = ""

    def __post_init__(self):
        self.weak = frozenset(self.weak) | frozenset(self.base.identities)
        for (g, f), gf in self.base.composition.items():
            if g in self.weak and f in self.weak and gf not in self.weak:
                raise ValidationError(
                    f"W n'est pas stable par composition: {self.base.arrows[g].name!r}∘{self.base.arrows[f].name!r}"
                )


def relative_category(base: FiniteCategory, weak: Iterable[Hashable] = (), mode: Optional[str] = None,
                      name: str = "") -> RelativeCategory:
    """
    Args:
        base: Catégorie sous-jacente
        weak: Noms des flèches de W (hors identités)
        mode: ``"isos"`` ou ``"all"`` à la place d'une liste explicite
        name: Nom d'affichage
    """
    if mode == "isos":
        arrows = base.isomorphisms()
    elif mode == "all":
        arrows = frozenset(range(len(base.arrows)))
    elif mode is None:
        arrows = frozenset(base.arrow_index(n) for n in weak)
    else:
        raise ParameterError(f"Mode de W inconnu: {mode!r}")
    return RelativeCategory(base, arrows, name or f"({base.name}, W)")


def core(category: FiniteCategory) -> FiniteCategory:
    """Sous-catégorie large des isomorphismes."""
    keep = sorted(category.isomorphisms())
    renumber = {old: new for new, old in enumerate(keep)}
    arrows = tuple(category.arrows[a] for a in keep)
    composition = {(renumber[g], renumber[f]): renumber[gf]
                   for (g, f), gf in category.composition.items() if g in renumber and f in renumber}
    identities = tuple(renumber[i] for i in category.identities)
    return FiniteCategory(category.objects, arrows, composition, identities, f"core({category.name})")


def is_groupoid(category: FiniteCategory) -> bool:
    return all(category.is_iso(a) for a in range(len(category.arrows)))


def functor_category(n: int, category: FiniteCategory) -> FiniteCategory:
    """
    Catégorie des foncteurs ``[n] -> C``.

    Les objets sont les suites composables ``(x_0, f_1, ..., f_n)``; les
    flèches sont les transformations naturelles, composées terme à terme.
    """
    if n < 0:
        raise ParameterError(f"functor_category: n doit être >= 0 (reçu {n})")
    if n == 0:
        objects_seq = [((x,), ()) for x in range(len(category.objects))]
    else:
        objects_seq = []
        for chain in category.chains(n):
            points = (category.arrows[chain[0]].source,) + tuple(category.arrows[a].target for a in chain)
            objects_seq.append((points, chain))
    names = [_functor_name(category, points, chain) for points, chain in objects_seq]
    arrows: List[Arrow] = []
    components: List[Tuple[int, ...]] = []
    identities = []
    lookup: Dict[Tuple[int, int, Tuple[int, ...]], int] = {}
    for s, (sp, sc) in enumerate(objects_seq):
        for t, (tp, tc) in enumerate(objects_seq):
            for alpha in _transformations(category, sp, sc, tp, tc):
                lookup[(s, t, alpha)] = len(arrows)
                arrows.append(Arrow((names[s], names[t], tuple(category.arrows[a].name for a in alpha)), s, t))
                components.append(alpha)
        identity_alpha = tuple(category.identities[x] for x in sp)
        identities.append(lookup[(s, s, identity_alpha)])
    by_source: Dict[int, List[int]] = {}
    for g, ag in enumerate(arrows):
        by_source.setdefault(ag.source, []).append(g)
    composition = {}
    for f, af in enumerate(arrows):
        for g in by_source.get(af.target, []):
            alpha = tuple(category.compose(b, a) for a, b in zip(components[f], components[g]))
            composition[(g, f)] = lookup[(af.source, arrows[g].target, alpha)]
    return FiniteCategory(tuple(names), tuple(arrows), composition, tuple(identities),
                          f"Fun([{n}],{category.name})")


def _functor_name(category: FiniteCategory, points, chain) -> Hashable:
    if not chain:
        return category.objects[points[0]]
    return tuple(category.arrows[a].name for a in chain)


def _transformations(category: FiniteCategory, sp, sc, tp, tc) -> List[Tuple[int, ...]]:
    found: List[Tuple[int, ...]] = []

    def extend(prefix: Tuple[int, ...]):
        i = len(prefix)
        if i == len(sp):
            found.append(prefix)
            return
        for a in category.hom(sp[i], tp[i]):
            if i > 0:
                # naturalité: G(f_i)∘α_{i-1} = α_i∘F(f_i)
                if category.compose(tc[i - 1], prefix[-1]) != category.compose(a, sc[i - 1]):
                    continue
            extend(prefix + (a,))

    extend(())
    return found


@dataclass(eq=False)
class Functor:
    """Foncteur explicite sur objets et flèches."""
    source: FiniteCategory
    target: FiniteCategory
    on_objects: Tuple[int, ...]
    on_arrows: Tuple[int, ...]

    def validate(self) -> None:
        s, t = self.source, self.target
        if len(self.on_objects) != len(s.objects) or len(self.on_arrows) != len(s.arrows):
            raise ValidationError("Foncteur incomplet")
        for a, arrow in enumerate(s.arrows):
            image = t.arrows[self.on_arrows[a]]
            if (image.source, image.target) != (self.on_objects[arrow.source], self.on_objects[arrow.target]):
                raise ValidationError(f"Le foncteur ne respecte pas source/cible de {arrow.name!r}")
        for x, i in enumerate(s.identities):
            if self.on_arrows[i] != t.identities[self.on_objects[x]]:
                raise ValidationError("Le foncteur ne préserve pas les identités")
        for (g, f), gf in s.composition.items():
            if t.compose(self.on_arrows[g], self.on_arrows[f]) != self.on_arrows[gf]:
                raise ValidationError("Le foncteur ne préserve pas la composition")


def functor_to_terminal(category: FiniteCategory, terminal: Optional[FiniteCategory] = None) -> Functor:
    terminal = terminal or terminal_category()
    return Functor(category, terminal, tuple(0 for _ in category.objects), tuple(0 for _ in category.arrows))


def compose_functors(outer: Functor, inner: Functor) -> Functor:
    return Functor(inner.source, outer.target,
                   tuple(outer.on_objects[x] for x in inner.on_objects),
                   tuple(outer.on_arrows[a] for a in inner.on_arrows))


def is_equivalence(functor: Functor) -> bool:
    """
    Décide si un foncteur est une équivalence (pleinement fidèle et
    essentiellement surjectif).
    """
    functor.validate()
    s, t = functor.source, functor.target
    for x in range(len(s.objects)):
        for y in range(len(s.objects)):
            images = [functor.on_arrows[a] for a in s.hom(x, y)]
            expected = t.hom(functor.on_objects[x], functor.on_objects[y])
            if len(set(images)) != len(images) or set(images) != set(expected):
                return False
    reached = set(functor.on_objects)
    for z in range(len(t.objects)):
        if not any(t.is_iso(a) for w in reached for a in t.hom(w, z)):
            return False
    return True


def isomorphic_categories(c: FiniteCategory, d: FiniteCategory) -> Optional[Functor]:
    """Cherche un isomorphisme de catégories (petites catégories seulement)."""
    if len(c.objects) != len(d.objects) or len(c.arrows) != len(d.arrows):
        return None
    for perm in permutations(range(len(d.objects))):
        if any(len(c.hom(x, y)) != len(d.hom(perm[x], perm[y]))
               for x in range(len(c.objects)) for y in range(len(c.objects))):
            continue
        found = _arrow_bijection(c, d, perm)
        if found is not None:
            return Functor(c, d, tuple(perm), found)
    return None


def _arrow_bijection(c: FiniteCategory, d: FiniteCategory, perm) -> Optional[Tuple[int, ...]]:
    order = list(range(len(c.arrows)))
    assignment: Dict[int, int] = {}
    used = set()

    def consistent(a: int) -> bool:
        for (g, f), gf in c.composition.items():
            if a not in (g, f, gf):
                continue
            if g in assignment and f in assignment and gf in assignment:
                if d.composition[(assignment[g], assignment[f])] != assignment[gf]:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        a = order[i]
        arrow = c.arrows[a]
        for b in d.hom(perm[arrow.source], perm[arrow.target]):
            if b in used:
                continue
            assignment[a] = b
            used.add(b)
            if consistent(a) and search(i + 1):
                return True
            used.discard(b)
            del assignment[a]
        return False

    if search(0):
        return tuple(assignment[a] for a in range(len(c.arrows)))
    return None
