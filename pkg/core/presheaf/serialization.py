"""
Forme texte canonique des ensembles simpliciaux (marqués ou non).
"""
from typing import FrozenSet, Hashable, Optional

from core.presheaf.ez import FinitePresheaf


def _label(value: Hashable) -> str:
    if isinstance(value, tuple):
        return "(" + ",".join(_label(v) for v in value) + ")"
    return str(value)


def _cell(presheaf: FinitePresheaf, cell) -> str:
    surjs, g = cell
    ops = ";".join("".join(str(v) for v in s) for s in surjs)
    return f"{_label(presheaf.generators[g].label)}@{ops}"


def to_text(presheaf: FinitePresheaf, marked: Optional[FrozenSet[int]] = None) -> str:
    """
    Sérialise une présentation: une ligne par générateur, regroupés par
    degré, puis une ligne ``marked:`` si un marquage est fourni.

    Args:
        presheaf: Préfaisceau présenté
        marked: Générateurs marqués (arêtes non dégénérées)

    Returns:
        Texte déterministe terminé par un saut de ligne
    """
    lines = [f"presheaf {presheaf.name} axes={presheaf.axes}"]
    if presheaf.truncation is not None:
        lines.append("truncation " + ",".join(str(t) for t in presheaf.truncation))
    degrees = sorted({gen.degree for gen in presheaf.generators}, key=lambda d: (sum(d), d))
    for degree in degrees:
        lines.append("degree " + ",".join(str(d) for d in degree))
        for g in presheaf.nondegenerate(degree):
            gen = presheaf.generators[g]
            faces = " | ".join(
                " ".join(_cell(presheaf, c) for c in axis_faces) for axis_faces in gen.faces if axis_faces
            )
            lines.append(f"  {_label(gen.label)}" + (f" : {faces}" if faces else ""))
    if marked is not None:
        names = sorted(_label(presheaf.generators[g].label) for g in marked)
        lines.append("marked: " + " ".join(names))
    return "\n".join(lines) + "\n"
