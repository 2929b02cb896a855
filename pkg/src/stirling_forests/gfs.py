"""Commuting involutions on trees and the marked-forest correspondences.

``phi(t, x)`` toggles the node labeled x between old-internal and young-leaf
status, fixing everything else:

* old internal x: every subtree hanging under x moves up, slot by slot, onto
  the matching slot of x's labeled grand parent (appended; x had the greatest
  label among its grand-parent's grand children, so order stays increasing),
  and x becomes a leaf;
* young leaf x: x sprouts k slots and pulls down, slot by slot, the subtrees
  of its grand parent whose root labels exceed x (relative order kept);
* any other x (roots, old leaves, young internal nodes): identity.

The toggles at distinct labels commute, so every subset of labels acts at
once; orbits of the induced action each contain exactly one tree free of
young leaves, reachable in a single simultaneous toggle of all young-leaf
labels.

A marked forest is a forest plus a label set S.  ``theta`` trades the
old-internal part of S for young leaves via the toggles; ``theta_prime``
reverses it by absorbing all young-leaf labels back into S.  Membership
predicates for the domains they pair up live here too.
"""

from __future__ import annotations

from dataclasses import dataclass

from .forest import (
    Forest,
    LabeledTree,
    forest_stats,
    label_sets,
    serialize_forest,
    serialize_tree,
)


@dataclass(frozen=True)
class MarkedForest:
    forest: Forest
    marks: frozenset[int]

    def text(self) -> str:
        inner = ",".join(str(x) for x in sorted(self.marks))
        return f"{serialize_forest(self.forest)} | {{{inner}}}"


def marked_forest(forest: Forest, marks) -> MarkedForest:
    marks = frozenset(marks)
    unknown = marks - set(forest.labels())
    if unknown:
        raise KeyError(f"marks {sorted(unknown)} do not occur in the forest")
    return MarkedForest(forest, marks)


def _tree_has(t: LabeledTree, x: int) -> bool:
    return any(lab == x for lab in t.labels())


def phi_acts(t: LabeledTree, x: int) -> bool:
    """True when the toggle at x is not the identity on this tree."""
    if not _tree_has(t, x):
        raise KeyError(f"label {x} does not occur in the tree")
    return _phi_walk(t, x, probe=True) is not None


def phi(t: LabeledTree, x: int) -> LabeledTree:
    """Toggle old-internal/young-leaf status at label x (an involution)."""
    if not _tree_has(t, x):
        raise KeyError(f"label {x} does not occur in the tree")
    if t.label == x:
        return t
    result = _phi_walk(t, x, probe=False)
    return t if result is None else result


def _phi_walk(u: LabeledTree, x: int, probe: bool) -> LabeledTree | None:
    """Rebuild u with the toggle applied below it; None when x is fixed.

    With probe=True, returns u itself as a cheap "acts" witness instead of
    rebuilding (still None when x is fixed).
    """
    if u.slots is None:
        return None
    grand = list(u.grand_children())
    if any(s.label == x for s in grand):
        top = max(s.label for s in grand)
        gx = next(s for s in grand if s.label == x)
        if x == top and gx.slots is not None:
            return u if probe else _raise_children(u, gx)
        if x != top and gx.slots is None:
            return u if probe else _lower_greater(u, x)
        return None
    for j, slot in enumerate(u.slots):
        for p, sub in enumerate(slot):
            if _tree_has(sub, x):
                new_sub = _phi_walk(sub, x, probe)
                if new_sub is None or probe:
                    return new_sub
                new_slot = slot[:p] + (new_sub,) + slot[p + 1 :]
                return LabeledTree(u.label, u.slots[:j] + (new_slot,) + u.slots[j + 1 :])
    return None


def _raise_children(u: LabeledTree, gx: LabeledTree) -> LabeledTree:
    """Old-internal case: gx's slot contents join u's slots; gx becomes a leaf."""
    assert gx.slots is not None and u.slots is not None
    new_slots = []
    for slot, extra in zip(u.slots, gx.slots):
        merged = tuple(LabeledTree(gx.label) if s is gx else s for s in slot) + extra
        assert all(
            a.label < b.label for a, b in zip(merged, merged[1:])
        ), "appending a greatest grand child's subtrees must keep slots increasing"
        new_slots.append(merged)
    return LabeledTree(u.label, tuple(new_slots))


def _lower_greater(u: LabeledTree, x: int) -> LabeledTree:
    """Young-leaf case: subtrees of u with roots above x drop under x."""
    assert u.slots is not None
    pulled = tuple(tuple(s for s in slot if s.label > x) for slot in u.slots)
    assert any(pulled), "a young leaf always has a greater sibling to pull down"
    assert all(
        a.label < b.label for slot in pulled for a, b in zip(slot, slot[1:])
    ), "pulled subtrees must arrive in increasing root order"
    new_x = LabeledTree(x, pulled)
    new_slots = tuple(
        tuple(new_x if s.label == x else s for s in slot if s.label <= x)
        for slot in u.slots
    )
    return LabeledTree(u.label, new_slots)


def phi_set(f: Forest, labels) -> Forest:
    """Apply the toggle at every label of S, componentwise.

    Toggles commute, so the application order is irrelevant; labels at which
    the toggle is the identity are simply fixed.
    """
    remaining = set(labels)
    unknown = remaining - set(f.labels())
    if unknown:
        raise KeyError(f"labels {sorted(unknown)} do not occur in the forest")
    new_trees = []
    for t in f.trees:
        mine = sorted(remaining & set(t.labels()))
        for x in mine:
            t = phi(t, x)
        new_trees.append(t)
    return Forest(f.k, tuple(new_trees))


def orbit(t: LabeledTree) -> list[LabeledTree]:
    """Closure of the tree under all toggles, canonically ordered by text."""
    seen = {t}
    frontier = [t]
    labels = sorted(t.labels())
    while frontier:
        nxt = []
        for s in frontier:
            for x in labels:
                image = phi(s, x)
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return sorted(seen, key=serialize_tree)


def orbit_representative(t: LabeledTree) -> LabeledTree:
    """The unique orbit member without young leaves.

    One simultaneous toggle of all young-leaf labels suffices; the result is
    checked to be young-leaf free.
    """
    f = Forest(_tree_k(t), (t,))
    young = label_sets(f)["Yleaf"]
    rep = phi_set(f, young).trees[0]
    assert forest_stats(Forest(f.k, (rep,))).yleaf == 0
    return rep


def _tree_k(t: LabeledTree) -> int:
    # A bare singleton carries no arity; any k gives the same (trivial) action.
    return len(t.slots) if t.slots is not None else 1


# ---------------------------------------------------------------------------
# marked-forest domains and the theta correspondences


def in_x(mf: MarkedForest) -> bool:
    """Forest without young leaves, marks among old internals and non-final
    singletons."""
    sets = label_sets(mf.forest)
    return forest_stats(mf.forest).yleaf == 0 and mf.marks <= (
        sets["Oint"] | sets["Si_star"]
    )


def in_y(mf: MarkedForest) -> bool:
    """Marks among non-final singletons."""
    return mf.marks <= label_sets(mf.forest)["Si_star"]


def in_x_bar(mf: MarkedForest) -> bool:
    from .forest import forest_class

    cls = forest_class(mf.forest)
    sets = label_sets(mf.forest)
    return (
        cls["in_bar"]
        and cls["in_star"]
        and mf.marks <= (sets["Oint_star"] | sets["Si_star"])
    )


def in_x_hat(mf: MarkedForest) -> bool:
    from .forest import forest_class

    cls = forest_class(mf.forest)
    sets = label_sets(mf.forest)
    return (
        not cls["in_bar"]
        and cls["in_star"]
        and mf.marks <= (sets["Oint"] | sets["Si_star"])
    )


def in_y_bar(mf: MarkedForest) -> bool:
    from .forest import forest_class

    cls = forest_class(mf.forest)
    stats = forest_stats(mf.forest)
    return cls["in_bar"] and stats.rleaf == 0 and in_y(mf)


def in_y_hat(mf: MarkedForest) -> bool:
    from .forest import forest_class

    cls = forest_class(mf.forest)
    stats = forest_stats(mf.forest)
    return not cls["in_bar"] and stats.rleaf == 0 and in_y(mf)


def theta(mf: MarkedForest) -> MarkedForest:
    """Toggle the old-internal part of the marks, keep the singleton part."""
    if not in_x(mf):
        raise ValueError("theta requires a young-leaf-free forest with marks "
                         "among old internals and non-final singletons")
    sets = label_sets(mf.forest)
    s1 = mf.marks & sets["Oint"]
    s2 = mf.marks & sets["Si_star"]
    return MarkedForest(phi_set(mf.forest, s1), frozenset(s2))


def theta_prime(mf: MarkedForest) -> MarkedForest:
    """Toggle all young leaves away and absorb their labels into the marks."""
    if not in_y(mf):
        raise ValueError("theta_prime requires marks among non-final singletons")
    s2 = label_sets(mf.forest)["Yleaf"]
    return MarkedForest(phi_set(mf.forest, s2), frozenset(mf.marks | s2))
