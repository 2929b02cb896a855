"""The fundamental forest transformation and the maps built from it.

``psi(f, x)`` does exactly one of four things, or nothing:

1. x labels a non-final singleton, and the nearest tree to its right that is
   a singleton or final is a singleton: x gains k slots and swallows, into
   slot k, every tree up to and including that singleton.
2. same position, but the nearest such tree is the non-singleton last tree:
   the trees strictly between move into the last root's slot k together with
   a fresh leaf carrying the old root label; the root is relabeled x and the
   slot re-sorted; x's singleton disappears.
3. x is a removable old leaf: the contents of its root's slot k pop out as
   new trees immediately to the right, and the stripped root becomes a
   singleton.  Inverse of case 1.
4. x is a removable young leaf (necessarily in the last tree): the slot-k
   subtrees strictly left of x pop out immediately before the last tree,
   preceded by a fresh singleton carrying the old root label; x is deleted
   and the root relabeled x.  Inverse of case 2.

Cases 1/2 raise lleaf - si by exactly 1, cases 3/4 lower it by exactly 1,
and bar-class membership is preserved throughout.

``alpha_step`` runs psi at the greatest mark (dropping it); ``beta_step``
runs psi at the least removable leaf (recording its root label as a new
mark).  ``gamma_map`` drains the marks with alpha; ``gamma_prime_map`` runs
beta until no removable leaf remains; the two are mutually inverse.
``main_bijection`` is gamma after theta.
"""

from __future__ import annotations

from .forest import Forest, LabeledTree, forest_stats, label_sets, removable_labels
from .gfs import MarkedForest, in_x_bar, in_x_hat, theta


def _singleton_index(f: Forest, x: int) -> int | None:
    for i, t in enumerate(f.trees):
        if t.slots is None and t.label == x:
            return i
    return None


def psi(f: Forest, x: int) -> Forest:
    if x not in set(f.labels()):
        raise KeyError(f"label {x} does not occur in the forest")
    m = len(f.trees)
    i = _singleton_index(f, x)
    rem = removable_labels(f)
    applicable = sum(
        [i is not None and i < m - 1, x in rem["old"], x in rem["young"]]
    )
    assert applicable <= 1, "psi cases must be mutually exclusive"
    if i is not None and i < m - 1:
        j = next(
            jj
            for jj in range(i + 1, m)
            if f.trees[jj].slots is None or jj == m - 1
        )
        if f.trees[j].slots is None:
            return _absorb_right(f, i, j)
        return _merge_into_last(f, i)
    if x in rem["old"]:
        return _pop_old(f, f.tree_index_of(x))
    if x in rem["young"]:
        return _pop_young(f, x)
    return f


def _absorb_right(f: Forest, i: int, j: int) -> Forest:
    """Case 1: the singleton at i swallows trees i+1..j into its slot k."""
    moved = f.trees[i + 1 : j + 1]
    slots = ((),) * (f.k - 1) + (moved,)
    new_tree = LabeledTree(f.trees[i].label, slots)
    return Forest(f.k, f.trees[:i] + (new_tree,) + f.trees[j + 1 :])


def _merge_into_last(f: Forest, i: int) -> Forest:
    """Case 2: relabel the last root by x; old root label becomes a leaf."""
    x = f.trees[i].label
    last = f.trees[-1]
    assert last.slots is not None
    y = last.label
    incoming = f.trees[i + 1 : -1] + (LabeledTree(y),)
    merged = tuple(sorted(last.slots[-1] + incoming, key=lambda t: t.label))
    labels = [t.label for t in merged]
    assert len(set(labels)) == len(labels), "slot merge collided on a label"
    new_last = LabeledTree(x, last.slots[:-1] + (merged,))
    return Forest(f.k, f.trees[:i] + (new_last,))


def _pop_old(f: Forest, i: int) -> Forest:
    """Case 3: eject the slot-k subtrees of tree i; its root goes singleton."""
    t = f.trees[i]
    assert t.slots is not None
    ejected = t.slots[-1]
    return Forest(
        f.k, f.trees[:i] + (LabeledTree(t.label),) + ejected + f.trees[i + 1 :]
    )


def _pop_young(f: Forest, x: int) -> Forest:
    """Case 4: split the last tree at the young leaf x; old root label
    reappears as a singleton."""
    last = f.trees[-1]
    assert last.slots is not None
    y = last.label
    slot = last.slots[-1]
    q = next(p for p, s in enumerate(slot) if s.label == x)
    assert slot[q].slots is None
    new_last = LabeledTree(x, last.slots[:-1] + (slot[q + 1 :],))
    return Forest(
        f.k,
        f.trees[:-1] + (LabeledTree(y),) + slot[:q] + (new_last,),
    )


def alpha_step(mf: MarkedForest) -> MarkedForest:
    """psi at the greatest mark, which must label a singleton; drop the mark."""
    if not mf.marks:
        raise ValueError("alpha requires a nonempty mark set")
    x = max(mf.marks)
    if _singleton_index(mf.forest, x) is None:
        raise ValueError(f"mark {x} does not label a singleton")
    return MarkedForest(psi(mf.forest, x), mf.marks - {x})


def beta_step(mf: MarkedForest) -> MarkedForest:
    """psi at the least removable leaf; record its root label as a mark."""
    rem = removable_labels(mf.forest)
    pool = rem["old"] | rem["young"]
    if not pool:
        raise ValueError("beta requires a removable leaf")
    x = min(pool)
    root_label = mf.forest.trees[mf.forest.tree_index_of(x)].label
    return MarkedForest(psi(mf.forest, x), frozenset(mf.marks | {root_label}))


def gamma_map(mf: MarkedForest) -> Forest:
    """Drain the marks, greatest first, through psi."""
    if not mf.marks <= label_sets(mf.forest)["Si_star"]:
        raise ValueError("gamma requires marks among non-final singletons")
    for _ in range(len(mf.marks)):
        mf = alpha_step(mf)
    return mf.forest


def gamma_prime_map(f: Forest, with_trajectory: bool = False):
    """Run beta until no removable leaf remains; inverse of gamma_map.

    Each step lowers lleaf - si by 1, so at most lleaf(f) - si(f) steps run.
    With ``with_trajectory`` the visited states and (x, y) choices come back
    too, for replay and audit.
    """
    mf = MarkedForest(f, frozenset())
    trajectory = [mf]
    steps: list[tuple[int, int]] = []
    budget = forest_stats(f).lleaf - forest_stats(f).si
    while forest_stats(mf.forest).rleaf > 0:
        assert len(steps) <= budget, "beta failed to terminate within its budget"
        rem = removable_labels(mf.forest)
        x = min(rem["old"] | rem["young"])
        y = mf.forest.trees[mf.forest.tree_index_of(x)].label
        mf = beta_step(mf)
        steps.append((x, y))
        trajectory.append(mf)
    if with_trajectory:
        return mf, trajectory, steps
    return mf


def main_bijection(mf: MarkedForest) -> Forest:
    """gamma after theta, on the bar- or hat-class marked domains."""
    if not (in_x_bar(mf) or in_x_hat(mf)):
        raise ValueError(
            "main bijection requires a starred forest with marks among "
            "old internals (bar: excluding the last root's) and non-final singletons"
        )
    return gamma_map(theta(mf))
