"""Increasing pruned even k-ary trees and forests.

A labeled node either is a leaf or carries exactly k ordered slots, one per
(unlabeled, odd-level) child; each slot holds an ordered list of subtrees.
The unlabeled layer is never materialized: "the j-th child of the root is a
leaf" reads as "slot j is empty", which makes prunedness structural (a node
with k empty slots cannot be constructed as an internal node; it must be a
leaf, i.e. have ``slots is None``).

Validity of a tree/forest:

* prunedness: an internal node has at least one nonempty slot;
* paths increase: every subtree root label exceeds its labeled grand parent;
* slot lists increase: root labels strictly increase left to right in a slot;
* forest roots increase left to right, and tree label sets are disjoint.

A non-root node is "old" when it has the greatest label among the grand
children of its labeled grand parent, otherwise "young"; roots are neither.

Canonical text grammar (bit-exact round-trip):

    Forest := Tree (" " Tree)*
    Tree   := LABEL | LABEL "[" Slot (";" Slot)^(k-1) "]"
    Slot   := empty | Tree ("," Tree)*

so the k=3 tree with root 4, slot 1 holding trees 5[;6;] and 8, slot 3
holding the leaf 7, prints as ``4[5[;6;],8;;7]``.  Parsing skips redundant
whitespace; serialization emits single spaces between trees only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .stirling import DEFAULT_MAX_OBJECTS, LimitError, count_k_stirling


class ForestSyntaxError(ValueError):
    """Malformed forest text; carries the offending position as ``.position``."""

    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(f"at position {position}: {message}")


class ForestInvariantError(ValueError):
    """Structurally well-formed input violating a forest invariant."""

    def __init__(self, label: int | None, message: str):
        self.label = label
        super().__init__(message)


@dataclass(frozen=True)
class LabeledTree:
    """A labeled node: a leaf (slots is None) or exactly k slot lists."""

    label: int
    slots: tuple[tuple["LabeledTree", ...], ...] | None = None

    @property
    def is_leaf(self) -> bool:
        return self.slots is None

    def labels(self) -> Iterator[int]:
        yield self.label
        if self.slots is not None:
            for slot in self.slots:
                for sub in slot:
                    yield from sub.labels()

    def grand_children(self) -> Iterator["LabeledTree"]:
        """Subtree roots across all slots, left to right."""
        if self.slots is not None:
            for slot in self.slots:
                yield from slot

    def size(self) -> int:
        return sum(1 for _ in self.labels())


@dataclass(frozen=True)
class Forest:
    k: int
    trees: tuple[LabeledTree, ...] = ()

    def labels(self) -> Iterator[int]:
        for t in self.trees:
            yield from t.labels()

    def tree_index_of(self, x: int) -> int:
        for i, t in enumerate(self.trees):
            if x in set(t.labels()):
                return i
        raise KeyError(f"label {x} does not occur in the forest")


class NodeClass(enum.Enum):
    ROOT = "Root"
    OLD_LEAF = "OldLeaf"
    YOUNG_LEAF = "YoungLeaf"
    OLD_INTERNAL = "OldInternal"
    YOUNG_INTERNAL = "YoungInternal"


@dataclass(frozen=True)
class ForestStats:
    lleaf: int
    si: int
    oleaf: int
    yleaf: int
    oint: int
    lint: int
    rleaf: int

    def as_dict(self) -> dict:
        return {
            "lleaf": self.lleaf,
            "si": self.si,
            "oleaf": self.oleaf,
            "yleaf": self.yleaf,
            "oint": self.oint,
            "lint": self.lint,
            "rleaf": self.rleaf,
        }


# ---------------------------------------------------------------------------
# text and JSON forms


def serialize_tree(t: LabeledTree) -> str:
    if t.slots is None:
        return str(t.label)
    body = ";".join(",".join(serialize_tree(s) for s in slot) for slot in t.slots)
    return f"{t.label}[{body}]"


def serialize_forest(f: Forest) -> str:
    return " ".join(serialize_tree(t) for t in f.trees)


class _Parser:
    def __init__(self, text: str, k: int):
        self.text = text
        self.k = k
        self.pos = 0

    def error(self, message: str) -> ForestSyntaxError:
        return ForestSyntaxError(self.pos, message)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_label(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a label")
        label = int(self.text[start : self.pos])
        if label <= 0:
            raise self.error("labels must be positive")
        return label

    def parse_tree(self) -> LabeledTree:
        label = self.parse_label()
        self.skip_ws()
        if self.peek() != "[":
            return LabeledTree(label)
        self.pos += 1
        slots: list[tuple[LabeledTree, ...]] = []
        while True:
            slots.append(self.parse_slot())
            self.skip_ws()
            ch = self.peek()
            if ch == ";":
                self.pos += 1
            elif ch == "]":
                self.pos += 1
                break
            else:
                raise self.error("expected ';' or ']'")
        if len(slots) != self.k:
            raise self.error(f"expected exactly {self.k} slots, found {len(slots)}")
        return LabeledTree(label, tuple(slots))

    def parse_slot(self) -> tuple[LabeledTree, ...]:
        self.skip_ws()
        if self.peek() in (";", "]"):
            return ()
        trees = [self.parse_tree()]
        self.skip_ws()
        while self.peek() == ",":
            self.pos += 1
            self.skip_ws()
            trees.append(self.parse_tree())
            self.skip_ws()
        return tuple(trees)

    def parse_forest(self) -> Forest:
        trees = []
        self.skip_ws()
        while self.pos < len(self.text):
            trees.append(self.parse_tree())
            self.skip_ws()
        return Forest(self.k, tuple(trees))


def parse_forest(text: str, k: int, validate: bool = True) -> Forest:
    """Parse canonical forest text; validates all invariants by default."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    f = _Parser(text, k).parse_forest()
    if validate:
        violations = validate_forest(f)
        if violations:
            label, message = violations[0]
            raise ForestInvariantError(label, message)
    return f


def parse_tree(text: str, k: int, validate: bool = True) -> LabeledTree:
    f = parse_forest(text, k, validate=validate)
    if len(f.trees) != 1:
        raise ValueError(f"expected a single tree, found {len(f.trees)}")
    return f.trees[0]


def tree_to_json(t: LabeledTree) -> dict:
    if t.slots is None:
        return {"label": t.label}
    return {
        "label": t.label,
        "slots": [[tree_to_json(s) for s in slot] for slot in t.slots],
    }


def tree_from_json(obj: dict) -> LabeledTree:
    if "slots" not in obj:
        return LabeledTree(int(obj["label"]))
    slots = tuple(tuple(tree_from_json(s) for s in slot) for slot in obj["slots"])
    return LabeledTree(int(obj["label"]), slots)


def forest_to_json(f: Forest) -> list:
    return [tree_to_json(t) for t in f.trees]


# ---------------------------------------------------------------------------
# validation and classification


def validate_forest(f: Forest) -> list[tuple[int | None, str]]:
    """All invariant violations as (offending label, message); empty when valid."""
    violations: list[tuple[int | None, str]] = []
    seen: set[int] = set()

    def walk(t: LabeledTree) -> None:
        if t.label in seen:
            violations.append((t.label, f"duplicate label {t.label}"))
        seen.add(t.label)
        if t.slots is None:
            return
        if len(t.slots) != f.k:
            violations.append((t.label, f"node {t.label} has {len(t.slots)} slots, expected {f.k}"))
        if all(not slot for slot in t.slots):
            violations.append((t.label, f"internal node {t.label} has k empty slots (not pruned)"))
        for slot in t.slots:
            for a, b in zip(slot, slot[1:]):
                if a.label >= b.label:
                    violations.append(
                        (b.label, f"slot under {t.label} not increasing: {a.label} before {b.label}")
                    )
            for sub in slot:
                if sub.label <= t.label:
                    violations.append(
                        (sub.label, f"path not increasing: {sub.label} below {t.label}")
                    )
                walk(sub)

    for a, b in zip(f.trees, f.trees[1:]):
        if a.label >= b.label:
            violations.append((b.label, f"roots not increasing: {a.label} before {b.label}"))
    for t in f.trees:
        walk(t)
    return violations


def node_classes(f: Forest) -> dict[int, NodeClass]:
    """Class of every labeled node, keyed by label."""
    classes: dict[int, NodeClass] = {}

    def walk(u: LabeledTree) -> None:
        if u.slots is None:
            return
        grand = list(u.grand_children())
        top = max(s.label for s in grand)
        for s in grand:
            old = s.label == top
            if s.slots is None:
                classes[s.label] = NodeClass.OLD_LEAF if old else NodeClass.YOUNG_LEAF
            else:
                classes[s.label] = NodeClass.OLD_INTERNAL if old else NodeClass.YOUNG_INTERNAL
            walk(s)

    for t in f.trees:
        classes[t.label] = NodeClass.ROOT
        walk(t)
    return classes


def classify_label(f: Forest, x: int) -> NodeClass:
    """Class of the node labeled x: root, or old/young crossed with leaf/internal."""
    classes = node_classes(f)
    if x not in classes:
        raise KeyError(f"label {x} does not occur in the forest")
    return classes[x]


def removable_labels(f: Forest) -> dict:
    """Labels of removable old leaves and removable young leaves.

    An old leaf u of a tree T_i is removable when u is a grand child of the
    root of T_i and the only leaf among those grand children, the first k-1
    slots of the root are empty, and (for i < m) u's label is below the next
    root.  A young leaf of the last tree that is a grand child of its root is
    removable when toggling it (gfs.phi) empties the root's first k-1 slots;
    detection applies the toggle and inspects the result.
    """
    from .gfs import phi

    old: set[int] = set()
    young: set[int] = set()
    m = len(f.trees)
    for i, t in enumerate(f.trees):
        if t.slots is None:
            continue
        grand = list(t.grand_children())
        leaves = [s for s in grand if s.slots is None]
        top = max(s.label for s in grand)
        candidate = next((s for s in leaves if s.label == top), None)
        if (
            candidate is not None
            and len(leaves) == 1
            and all(not slot for slot in t.slots[: f.k - 1])
            and (i == m - 1 or candidate.label < f.trees[i + 1].label)
        ):
            old.add(candidate.label)
    last = f.trees[-1] if f.trees else None
    if last is not None and last.slots is not None:
        grand = list(last.grand_children())
        top = max(s.label for s in grand)
        for s in grand:
            if s.slots is None and s.label != top:
                toggled = phi(last, s.label)
                assert toggled.slots is not None
                if all(not slot for slot in toggled.slots[: f.k - 1]):
                    young.add(s.label)
    return {"old": old, "young": young}


def forest_stats(f: Forest) -> ForestStats:
    """All seven counters; singletons count as labeled leaves."""
    lleaf = si = oleaf = yleaf = oint = lint = 0
    classes = node_classes(f)
    for t in f.trees:
        if t.slots is None:
            si += 1
    for label, cls in classes.items():
        if cls is NodeClass.ROOT:
            root = next(t for t in f.trees if t.label == label)
            if root.slots is None:
                lleaf += 1
            else:
                lint += 1
        elif cls is NodeClass.OLD_LEAF:
            lleaf += 1
            oleaf += 1
        elif cls is NodeClass.YOUNG_LEAF:
            lleaf += 1
            yleaf += 1
        elif cls is NodeClass.OLD_INTERNAL:
            lint += 1
            oint += 1
        else:
            lint += 1
    rem = removable_labels(f)
    return ForestStats(
        lleaf=lleaf,
        si=si,
        oleaf=oleaf,
        yleaf=yleaf,
        oint=oint,
        lint=lint,
        rleaf=len(rem["old"]) + len(rem["young"]),
    )


def label_sets(f: Forest) -> dict:
    """Old-internal / old-leaf / young-leaf / singleton label sets and the
    starred variants that discount the last tree."""
    classes = node_classes(f)
    oint = {x for x, c in classes.items() if c is NodeClass.OLD_INTERNAL}
    oleaf = {x for x, c in classes.items() if c is NodeClass.OLD_LEAF}
    yleaf = {x for x, c in classes.items() if c is NodeClass.YOUNG_LEAF}
    si = {t.label for t in f.trees if t.slots is None}
    oint_star = set(oint)
    si_star = set(si)
    if f.trees:
        last = f.trees[-1]
        if last.slots is None:
            si_star.discard(last.label)
        else:
            for s in last.grand_children():
                if classes[s.label] is NodeClass.OLD_INTERNAL:
                    oint_star.discard(s.label)
    return {
        "Oint": oint,
        "Oleaf": oleaf,
        "Yleaf": yleaf,
        "Si": si,
        "Oint_star": oint_star,
        "Si_star": si_star,
    }


def in_bar(f: Forest) -> bool:
    """Last tree a singleton or its root's first k-1 slots empty; the empty
    forest counts as bar (its hat class is empty)."""
    if not f.trees:
        return True
    last = f.trees[-1]
    return last.slots is None or all(not slot for slot in last.slots[: f.k - 1])


def forest_class(f: Forest) -> dict:
    """Bar membership plus star membership (no young leaves and no
    removable leaves)."""
    stats = forest_stats(f)
    return {"in_bar": in_bar(f), "in_star": stats.yleaf == 0 and stats.rleaf == 0}


# ---------------------------------------------------------------------------
# direct enumeration, independent of the word bijections

_FOREST_CACHE: dict[tuple[tuple[int, ...], int], list[tuple[LabeledTree, ...]]] = {}
_TREE_CACHE: dict[tuple[tuple[int, ...], int], list[LabeledTree]] = {}


def _forest_tuples(labels: tuple[int, ...], k: int) -> list[tuple[LabeledTree, ...]]:
    key = (labels, k)
    cached = _FOREST_CACHE.get(key)
    if cached is not None:
        return cached
    if not labels:
        out: list[tuple[LabeledTree, ...]] = [()]
    else:
        out = []
        first, rest = labels[0], labels[1:]
        for mask in range(1 << len(rest)):
            block = (first,) + tuple(a for i, a in enumerate(rest) if mask >> i & 1)
            remainder = tuple(a for i, a in enumerate(rest) if not mask >> i & 1)
            for t in _tree_list(block, k):
                for tail in _forest_tuples(remainder, k):
                    out.append((t,) + tail)
    _FOREST_CACHE[key] = out
    return out


def _tree_list(block: tuple[int, ...], k: int) -> list[LabeledTree]:
    key = (block, k)
    cached = _TREE_CACHE.get(key)
    if cached is not None:
        return cached
    if len(block) == 1:
        out = [LabeledTree(block[0])]
    else:
        out = []
        root, rest = block[0], block[1:]
        for assignment in product(range(k), repeat=len(rest)):
            shares = tuple(
                tuple(a for a, slot in zip(rest, assignment) if slot == j) for j in range(k)
            )
            for combo in product(*(_forest_tuples(share, k) for share in shares)):
                out.append(LabeledTree(root, tuple(combo)))
    _TREE_CACHE[key] = out
    return out


def enumerate_forests(
    labels: Sequence[int], k: int, max_objects: int = DEFAULT_MAX_OBJECTS
) -> Iterator[Forest]:
    """All forests on the given label set, each exactly once, deterministically.

    A forest on M is a set partition of M into blocks ordered by minima, one
    tree per block; a tree on a block is its minimum as root plus an ordered
    k-tuple of forests partitioning the remaining labels.
    """
    labs = tuple(sorted(labels))
    if len(set(labs)) != len(labs):
        raise ValueError("labels must be distinct")
    if count_k_stirling(len(labs), k) > max_objects:
        raise LimitError(
            f"forest count {count_k_stirling(len(labs), k)} exceeds ceiling {max_objects}"
        )
    for trees in _forest_tuples(labs, k):
        yield Forest(k, trees)


def enumerate_trees(
    labels: Sequence[int], k: int, max_objects: int = DEFAULT_MAX_OBJECTS
) -> Iterator[LabeledTree]:
    """All single trees on the given label set (the one-block forests)."""
    labs = tuple(sorted(labels))
    if len(set(labs)) != len(labs):
        raise ValueError("labels must be distinct")
    if not labs:
        return
    if count_k_stirling(len(labs), k) > max_objects:
        raise LimitError(
            f"tree count is bounded by {count_k_stirling(len(labs), k)} > {max_objects}"
        )
    yield from _tree_list(labs, k)
