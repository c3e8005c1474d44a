"""Finite preorders, their equivalence classes, and the quotient poset.

A preorder is a reflexive transitive relation on labelled elements.  Two
elements are equivalent when each is below the other; the classes of that
equivalence inherit a partial order.  Relations are stored as one bitmask
row per element, which keeps closure and interval queries cheap at desk
scale.
"""

from __future__ import annotations


class PreorderError(ValueError):
    """Bad labels, undeclared elements, or malformed preorder files."""


def _validate_labels(labels):
    if not labels:
        raise PreorderError("a preorder needs at least one element")
    seen = set()
    for lab in labels:
        if not isinstance(lab, str) or not lab:
            raise PreorderError(f"labels must be non-empty strings, got {lab!r}")
        if any(ch.isspace() for ch in lab) or "#" in lab:
            raise PreorderError(f"label {lab!r} contains whitespace or '#'")
        if lab in seen:
            raise PreorderError(f"duplicate label {lab!r}")
        seen.add(lab)


def close_relations(elements, generators) -> "Preorder":
    """Reflexive-transitive closure of generator pairs over the given labels."""
    labels = list(elements)
    _validate_labels(labels)
    index = {x: i for i, x in enumerate(labels)}
    up = [1 << i for i in range(len(labels))]
    for x, y in generators:
        if x not in index:
            raise PreorderError(f"undeclared label {x!r} in relation ({x}, {y})")
        if y not in index:
            raise PreorderError(f"undeclared label {y!r} in relation ({x}, {y})")
        up[index[x]] |= 1 << index[y]
    # Warshall closure on bitmask rows
    n = len(labels)
    for k in range(n):
        row_k = up[k]
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= row_k
    return Preorder(tuple(labels), up)


class Preorder:
    """Reflexive-transitive relation over distinct labels (bitmask rows).

    Use :func:`close_relations` or :func:`load_preorder_text` to build one;
    the constructor trusts its arguments.
    """

    def __init__(self, elements, up_masks):
        self.elements = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        self._up = list(up_masks)
        self._quotient = None
        self._pairs = None

    def _i(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise PreorderError(f"unknown label {x!r}") from None

    def leq(self, x, y) -> bool:
        return bool(self._up[self._i(x)] >> self._i(y) & 1)

    def lt(self, x, y) -> bool:
        i, j = self._i(x), self._i(y)
        return bool(self._up[i] >> j & 1) and not self._up[j] >> i & 1

    def sim(self, x, y) -> bool:
        """Equivalence: each below the other."""
        i, j = self._i(x), self._i(y)
        return bool(self._up[i] >> j & 1) and bool(self._up[j] >> i & 1)

    def interval(self, x, y):
        """Sorted tuple of all z with x <= z <= y."""
        i, j = self._i(x), self._i(y)
        out = [
            self.elements[k]
            for k in range(len(self.elements))
            if self._up[i] >> k & 1 and self._up[k] >> j & 1
        ]
        return tuple(sorted(out))

    def comparable_pairs(self):
        """Sorted list of ordered pairs (x, y) with x <= y, diagonal included."""
        if self._pairs is None:
            pairs = [
                (x, y)
                for i, x in enumerate(self.elements)
                for j, y in enumerate(self.elements)
                if self._up[i] >> j & 1
            ]
            self._pairs = sorted(pairs)
        return self._pairs

    def quotient(self) -> "QuotientPoset":
        if self._quotient is None:
            self._quotient = QuotientPoset(self)
        return self._quotient

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Preorder)
            and other.elements == self.elements
            and other._up == self._up
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return f"Preorder({len(self.elements)} elements)"


class QuotientPoset:
    """Partial order on the equivalence classes of a preorder.

    Classes are sorted-label tuples ordered by representative; the
    representative is the lexicographically least member.  Order queries
    accept any member label and answer for its class.
    """

    def __init__(self, source: Preorder):
        n = len(source.elements)
        up = source._up
        groups = {}
        for i in range(n):
            mutual = tuple(j for j in range(n) if up[i] >> j & 1 and up[j] >> i & 1)
            groups.setdefault(mutual, []).append(i)
        classes = sorted(
            (tuple(sorted(source.elements[i] for i in members)) for members in groups.values()),
            key=lambda c: c[0],
        )
        self.source = source
        self.classes = tuple(classes)
        self.reps = tuple(c[0] for c in self.classes)
        self.class_of = {lab: ci for ci, c in enumerate(self.classes) for lab in c}
        k = len(self.classes)
        rep_idx = [source._index[r] for r in self.reps]
        self._up = [
            sum(1 << cj for cj in range(k) if up[rep_idx[ci]] >> rep_idx[cj] & 1)
            for ci in range(k)
        ]
        self._strict_pairs = None
        self._chain_memo = {}
        self._height = None

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def _c(self, x) -> int:
        try:
            return self.class_of[x]
        except KeyError:
            raise PreorderError(f"unknown label {x!r}") from None

    def rep(self, x) -> str:
        return self.reps[self._c(x)]

    def class_members(self, x):
        return self.classes[self._c(x)]

    def leq(self, x, y) -> bool:
        return bool(self._up[self._c(x)] >> self._c(y) & 1)

    def lt(self, x, y) -> bool:
        ci, cj = self._c(x), self._c(y)
        return ci != cj and bool(self._up[ci] >> cj & 1)

    def strict_pairs(self):
        """All ordered pairs of representatives (x, y) with [x] < [y], sorted."""
        if self._strict_pairs is None:
            k = self.n_classes
            self._strict_pairs = sorted(
                (self.reps[i], self.reps[j])
                for i in range(k)
                for j in range(k)
                if i != j and self._up[i] >> j & 1
            )
        return self._strict_pairs

    def interval_length(self, x, y) -> int:
        """Longest chain length (number of strict steps) from [x] to [y]."""
        ci, cj = self._c(x), self._c(y)
        if not self._up[ci] >> cj & 1:
            raise PreorderError(f"{x!r} is not below {y!r} in the quotient")
        return self._longest(ci, cj)

    def _longest(self, ci, cj) -> int:
        if ci == cj:
            return 0
        key = (ci, cj)
        got = self._chain_memo.get(key)
        if got is not None:
            return got
        best = 0
        for b in range(self.n_classes):
            if b != ci and self._up[ci] >> b & 1 and self._up[b] >> cj & 1:
                cand = 1 + self._longest(b, cj)
                if cand > best:
                    best = cand
        self._chain_memo[key] = best
        return best

    def height(self) -> int:
        """Longest strict chain length anywhere in the quotient."""
        if self._height is None:
            best = 0
            for x, y in self.strict_pairs():
                cand = self.interval_length(x, y)
                if cand > best:
                    best = cand
            self._height = best
        return self._height

    def connected_components(self):
        """Components of the comparability graph, as sorted tuples of reps."""
        k = self.n_classes
        seen = [False] * k
        comps = []
        for start in range(k):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                a = stack.pop()
                comp.append(a)
                for b in range(k):
                    if not seen[b] and (self._up[a] >> b & 1 or self._up[b] >> a & 1):
                        seen[b] = True
                        stack.append(b)
            comps.append(tuple(sorted(self.reps[i] for i in comp)))
        return sorted(comps)

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def as_preorder(self) -> Preorder:
        """The quotient itself as a preorder on the representative labels."""
        return close_relations(sorted(self.reps), self.strict_pairs())

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, QuotientPoset)
            and other.classes == self.classes
            and other._up == self._up
            and other.source == self.source
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return f"QuotientPoset({self.n_classes} classes)"


def load_preorder_text(text: str) -> Preorder:
    """Parse the preorder file format.

    One ``elements`` line lists the labels; each ``rel x y`` line adds a
    generating relation x <= y.  ``#`` starts a comment.
    """
    elements = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "elements":
            if elements is not None:
                raise PreorderError(f"line {lineno}: duplicate elements line")
            if len(tokens) < 2:
                raise PreorderError(f"line {lineno}: elements line needs at least one label")
            elements = tokens[1:]
        elif tokens[0] == "rel":
            if len(tokens) != 3:
                raise PreorderError(f"line {lineno}: rel needs exactly two labels")
            gens.append((lineno, tokens[1], tokens[2]))
        else:
            raise PreorderError(f"line {lineno}: unknown directive {tokens[0]!r}")
    if elements is None:
        raise PreorderError("missing elements line")
    declared = set(elements)
    for lineno, x, y in gens:
        for lab in (x, y):
            if lab not in declared:
                raise PreorderError(f"line {lineno}: undeclared label {lab!r}")
    return close_relations(elements, [(x, y) for _, x, y in gens])


def load_preorder(path) -> Preorder:
    with open(path, "r", encoding="utf-8") as fh:
        return load_preorder_text(fh.read())


def preorder_to_text(preorder: Preorder) -> str:
    """File-format text that reloads to an equal preorder."""
    lines = ["elements " + " ".join(preorder.elements)]
    for x, y in preorder.comparable_pairs():
        if x != y:
            lines.append(f"rel {x} {y}")
    return "\n".join(lines) + "\n"


def preorder_descriptor(preorder: Preorder) -> str:
    """One-line replayable description, same grammar as the file format."""
    return "; ".join(preorder_to_text(preorder).strip().splitlines())
