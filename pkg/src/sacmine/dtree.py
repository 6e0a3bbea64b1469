"""Entropy-based decision-tree learning over nominal-labeled tabular data.

Top-down induction in the classic C4.5 style: numeric attributes split on
a threshold into (<=, >) branches, nominal attributes split one branch per
domain value, and each node takes the split maximizing information gain
or gain ratio. Ties break by schema declaration order, then by smaller
threshold, which makes the learned tree independent of instance order.

No pruning and no missing-value handling: stopping is purity, a minimum
leaf size, an optional depth cap, or a non-positive best score.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadThreshold,
    EmptyCounts,
    EmptyDataset,
    InvalidFraction,
    MissingHeader,
    SchemaMismatch,
    UnknownAttribute,
)

NUMERIC = "numeric"
NOMINAL = "nominal"
GAIN = "gain"
GAIN_RATIO = "gain_ratio"
CRITERIA = (GAIN, GAIN_RATIO)


# --- Schema and data --------------------------------------------------------


@dataclass(frozen=True)
class AttributeSpec:
    """A named column: numeric, or nominal with an ordered value domain."""

    name: str
    kind: str
    domain: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in (NUMERIC, NOMINAL):
            raise ValueError(f"{self.name}: kind must be numeric or nominal")
        object.__setattr__(self, "domain", tuple(self.domain))
        if self.kind == NOMINAL:
            if not self.domain:
                raise ValueError(f"{self.name}: nominal attribute needs a domain")
            if len(set(self.domain)) != len(self.domain):
                raise ValueError(f"{self.name}: domain values must be unique")
        elif self.domain:
            raise ValueError(f"{self.name}: numeric attribute takes no domain")


@dataclass(frozen=True)
class Instance:
    """One row: positional attribute values plus a nominal class label."""

    values: tuple
    label: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


@dataclass(frozen=True)
class Dataset:
    """Schema plus instances; every instance is validated on construction."""

    attributes: tuple[AttributeSpec, ...]
    label: AttributeSpec
    instances: tuple[Instance, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "instances", tuple(self.instances))
        names = [a.name for a in self.attributes] + [self.label.name]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate column names: {names}")
        if self.label.kind != NOMINAL:
            raise ValueError("label must be nominal")
        for inst in self.instances:
            self._validate(inst)

    def _validate(self, inst: Instance) -> None:
        if len(inst.values) != len(self.attributes):
            raise SchemaMismatch(
                f"instance has {len(inst.values)} values, schema has {len(self.attributes)}"
            )
        for spec, v in zip(self.attributes, inst.values):
            if spec.kind == NUMERIC:
                if not _is_number(v):
                    raise SchemaMismatch(f"{spec.name}: expected a number, got {v!r}")
            elif v not in spec.domain:
                raise SchemaMismatch(f"{spec.name}: {v!r} not in domain {spec.domain}")
        if inst.label not in self.label.domain:
            raise SchemaMismatch(f"label {inst.label!r} not in {self.label.domain}")

    def attribute_index(self, name: str) -> int:
        for i, spec in enumerate(self.attributes):
            if spec.name == name:
                return i
        raise UnknownAttribute(f"no attribute named {name!r}")

    def with_instances(self, instances) -> "Dataset":
        return Dataset(self.attributes, self.label, tuple(instances))


# --- Tree nodes --------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    """Terminal node: majority class and the training class distribution."""

    label: str
    distribution: dict[str, float]
    n: int


@dataclass(frozen=True)
class Split:
    """Internal node; numeric splits use threshold/le/gt, nominal use branches."""

    attribute: str
    index: int
    threshold: float | None = None
    le: "TreeNode | None" = None
    gt: "TreeNode | None" = None
    branches: dict[str, "TreeNode"] | None = None


TreeNode = Leaf | Split


def _children(node: Split):
    if node.threshold is not None:
        return [node.le, node.gt]
    return list(node.branches.values())


def count_nodes(tree: TreeNode) -> int:
    if isinstance(tree, Leaf):
        return 1
    return 1 + sum(count_nodes(c) for c in _children(tree))


def count_leaves(tree: TreeNode) -> int:
    if isinstance(tree, Leaf):
        return 1
    return sum(count_leaves(c) for c in _children(tree))


def collect_splits(tree: TreeNode) -> list[Split]:
    """All internal nodes in preorder."""
    if isinstance(tree, Leaf):
        return []
    out = [tree]
    for child in _children(tree):
        out.extend(collect_splits(child))
    return out


# --- Entropy and split scoring ----------------------------------------------


def entropy(class_counts) -> float:
    """Shannon entropy in bits of a count vector, with 0*log0 = 0."""
    counts = list(class_counts)
    for c in counts:
        if c < 0:
            raise ValueError(f"counts must be nonnegative, got {c}")
    total = sum(counts)
    if total < 1:
        raise EmptyCounts("entropy needs at least one observation")
    return _entropy(counts, total)


def _entropy(counts, total) -> float:
    # fsum is correctly rounded, so the result is permutation-invariant
    h = math.fsum((c / total) * math.log2(c / total) for c in counts if c)
    return -h if h else 0.0


def _class_counts(instances, domain) -> list[int]:
    counts = dict.fromkeys(domain, 0)
    for inst in instances:
        counts[inst.label] += 1
    return [counts[c] for c in domain]


def _partition_numeric(instances, index, threshold):
    le, gt = [], []
    for inst in instances:
        (le if inst.values[index] <= threshold else gt).append(inst)
    return le, gt


def _partition_nominal(instances, index, domain):
    parts = {v: [] for v in domain}
    for inst in instances:
        parts[inst.values[index]].append(inst)
    return parts


def _split_score(parent_counts, parts, n, domain, criterion) -> float:
    child_h = 0.0
    for part in parts:
        if part:
            child_h += (len(part) / n) * _entropy(_class_counts(part, domain), len(part))
    gain = _entropy(parent_counts, n) - child_h
    if criterion == GAIN:
        return gain
    split_info = _entropy([len(p) for p in parts], n)
    return gain / split_info if split_info > 0.0 else 0.0


def _parts_for(data: Dataset, attribute: str, threshold):
    index = data.attribute_index(attribute)
    spec = data.attributes[index]
    if spec.kind == NUMERIC:
        if threshold is None:
            raise BadThreshold(f"{attribute}: numeric attribute needs a threshold")
        return list(_partition_numeric(data.instances, index, threshold))
    if threshold is not None:
        raise BadThreshold(f"{attribute}: nominal attribute takes no threshold")
    return list(_partition_nominal(data.instances, index, spec.domain).values())


def info_gain(data: Dataset, attribute: str, threshold: float | None = None) -> float:
    """Entropy reduction of splitting ``data`` on the given attribute.

    A threshold putting all instances on one side is not an error; the
    gain is simply 0.
    """
    if not data.instances:
        raise EmptyDataset("info_gain needs a non-empty dataset")
    parts = _parts_for(data, attribute, threshold)
    counts = _class_counts(data.instances, data.label.domain)
    return _split_score(counts, parts, len(data.instances), data.label.domain, GAIN)


def gain_ratio(data: Dataset, attribute: str, threshold: float | None = None) -> float:
    """Information gain normalized by the entropy of the branch sizes.

    Returns 0 when the split information is 0 (all instances in one branch).
    """
    if not data.instances:
        raise EmptyDataset("gain_ratio needs a non-empty dataset")
    parts = _parts_for(data, attribute, threshold)
    counts = _class_counts(data.instances, data.label.domain)
    return _split_score(counts, parts, len(data.instances), data.label.domain, GAIN_RATIO)


def numeric_candidates(instances, index) -> list[float]:
    """Candidate thresholds: midpoints between consecutive distinct values
    whose class sets differ."""
    by_value: dict[float, set[str]] = {}
    for inst in instances:
        by_value.setdefault(inst.values[index], set()).add(inst.label)
    values = sorted(by_value)
    return [
        (v1 + v2) / 2.0
        for v1, v2 in zip(values, values[1:])
        if by_value[v1] != by_value[v2]
    ]


def _check_criterion(criterion: str) -> None:
    if criterion not in CRITERIA:
        raise ValueError(f"criterion must be one of {CRITERIA}, got {criterion!r}")


def rank_attributes(data: Dataset, criterion: str = GAIN_RATIO) -> list[tuple[str, float]]:
    """Score every attribute by its best split, descending.

    Numeric attributes take the maximum over candidate thresholds; an
    attribute with no viable split scores 0. Ties keep schema declaration
    order.
    """
    _check_criterion(criterion)
    if not data.instances:
        raise EmptyDataset("rank_attributes needs a non-empty dataset")
    domain = data.label.domain
    counts = _class_counts(data.instances, domain)
    n = len(data.instances)
    ranked = []
    for pos, spec in enumerate(data.attributes):
        if spec.kind == NUMERIC:
            score = 0.0
            for t in numeric_candidates(data.instances, pos):
                parts = _partition_numeric(data.instances, pos, t)
                score = max(score, _split_score(counts, parts, n, domain, criterion))
        else:
            parts = _partition_nominal(data.instances, pos, spec.domain)
            score = _split_score(counts, list(parts.values()), n, domain, criterion)
        ranked.append((spec.name, score, pos))
    ranked.sort(key=lambda t: (-t[1], t[2]))
    return [(name, score) for name, score, _ in ranked]


# --- Induction ----------------------------------------------------------------


def _majority(counts, domain) -> str:
    best_i = 0
    for i in range(1, len(counts)):
        if counts[i] > counts[best_i]:
            best_i = i
    return domain[best_i]


def build_tree(
    data: Dataset,
    criterion: str = GAIN_RATIO,
    min_leaf: int = 2,
    max_depth: int | None = None,
) -> TreeNode:
    """Learn a tree by recursive top-down induction.

    A node becomes a leaf when it is pure, holds fewer than 2*min_leaf
    instances, hits ``max_depth``, or no candidate split scores above 0.
    Candidate splits must leave at least ``min_leaf`` instances in every
    branch (all domain values, for nominal splits), so every leaf of the
    result covers at least ``min_leaf`` training instances unless the
    whole dataset was smaller than 2*min_leaf. Leaf classes are the
    majority, ties resolved by label-domain declaration order.
    """
    _check_criterion(criterion)
    if not data.instances:
        raise EmptyDataset("build_tree needs a non-empty dataset")
    if not data.attributes:
        raise ValueError("schema has no non-label attributes")
    if min_leaf < 1:
        raise ValueError(f"min_leaf must be >= 1, got {min_leaf}")
    domain = data.label.domain

    def leaf_for(instances, counts) -> Leaf:
        n = len(instances)
        dist = {c: counts[i] / n for i, c in enumerate(domain)}
        return Leaf(_majority(counts, domain), dist, n)

    def grow(instances, depth) -> TreeNode:
        counts = _class_counts(instances, domain)
        n = len(instances)
        if (
            n < 2 * min_leaf
            or sum(1 for c in counts if c) == 1
            or (max_depth is not None and depth >= max_depth)
        ):
            return leaf_for(instances, counts)

        best_score = 0.0
        best = None
        for pos, spec in enumerate(data.attributes):
            if spec.kind == NUMERIC:
                for t in numeric_candidates(instances, pos):
                    le, gt = _partition_numeric(instances, pos, t)
                    if len(le) < min_leaf or len(gt) < min_leaf:
                        continue
                    score = _split_score(counts, [le, gt], n, domain, criterion)
                    if score > best_score:
                        best_score = score
                        best = (spec, pos, t, le, gt, None)
            else:
                parts = _partition_nominal(instances, pos, spec.domain)
                if any(len(p) < min_leaf for p in parts.values()):
                    continue
                score = _split_score(counts, list(parts.values()), n, domain, criterion)
                if score > best_score:
                    best_score = score
                    best = (spec, pos, None, None, None, parts)

        if best is None:
            return leaf_for(instances, counts)
        spec, pos, t, le, gt, parts = best
        if spec.kind == NUMERIC:
            return Split(
                attribute=spec.name,
                index=pos,
                threshold=t,
                le=grow(le, depth + 1),
                gt=grow(gt, depth + 1),
            )
        return Split(
            attribute=spec.name,
            index=pos,
            branches={v: grow(parts[v], depth + 1) for v in spec.domain},
        )

    return grow(list(data.instances), 0)


def predict(tree: TreeNode, instance) -> tuple[str, dict[str, float]]:
    """Route an instance to a leaf; returns (class, class distribution)."""
    values = instance.values if isinstance(instance, Instance) else tuple(instance)
    node = tree
    while isinstance(node, Split):
        if node.index >= len(values):
            raise SchemaMismatch(f"instance too short for attribute {node.attribute!r}")
        v = values[node.index]
        if node.threshold is not None:
            if not _is_number(v):
                raise SchemaMismatch(f"{node.attribute}: expected a number, got {v!r}")
            node = node.le if v <= node.threshold else node.gt
        else:
            if v not in node.branches:
                raise SchemaMismatch(f"{node.attribute}: no branch for {v!r}")
            node = node.branches[v]
    return node.label, dict(node.distribution)


# --- Rules ---------------------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    attribute: str
    index: int
    op: str  # "<=", ">" or "="
    value: float | str

    def matches(self, values) -> bool:
        v = values[self.index]
        if self.op == "<=":
            return v <= self.value
        if self.op == ">":
            return v > self.value
        return v == self.value

    def text(self) -> str:
        value = repr(self.value) if isinstance(self.value, float) else str(self.value)
        return f"{self.attribute} {self.op} {value}"


@dataclass(frozen=True)
class Rule:
    """One root-to-leaf path as a conjunction of conditions."""

    conditions: tuple[Condition, ...]
    label: str
    coverage: int
    confidence: float

    def matches(self, instance) -> bool:
        values = instance.values if isinstance(instance, Instance) else tuple(instance)
        return all(c.matches(values) for c in self.conditions)

    def text(self, label_name: str = "class") -> str:
        if not self.conditions:
            return f"If true then {label_name} = {self.label}"
        conds = " and ".join(c.text() for c in self.conditions)
        return f"If {conds} then {label_name} = {self.label}"


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...]

    def classify(self, instance) -> str:
        """Label of the first matching rule."""
        for rule in self.rules:
            if rule.matches(instance):
                return rule.label
        raise SchemaMismatch("no rule matched; rules are not from a complete tree")

    def to_text(self, label_name: str = "class") -> list[str]:
        return [rule.text(label_name) for rule in self.rules]


def _merge_conditions(conds: list[Condition]) -> tuple[Condition, ...]:
    # one bound per (attribute, op): <= keeps the smallest, > the largest
    order: list[tuple[int, str]] = []
    best: dict[tuple[int, str], Condition] = {}
    for c in conds:
        key = (c.index, c.op)
        if key not in best:
            order.append(key)
            best[key] = c
        elif c.op == "<=" and c.value < best[key].value:
            best[key] = c
        elif c.op == ">" and c.value > best[key].value:
            best[key] = c
        elif c.op == "=":
            best[key] = c
    return tuple(best[k] for k in order)


def extract_rules(tree: TreeNode) -> RuleSet:
    """One rule per leaf, in left-to-right leaf order.

    Conditions follow the root-to-leaf path with redundant bounds on the
    same attribute merged down to the tightest one. Coverage is the leaf's
    training count and confidence the leaf's majority-class fraction, so
    first-match classification over the rules reproduces the tree.
    """
    rules: list[Rule] = []

    def walk(node, conds):
        if isinstance(node, Leaf):
            rules.append(
                Rule(
                    conditions=_merge_conditions(conds),
                    label=node.label,
                    coverage=node.n,
                    confidence=node.distribution[node.label],
                )
            )
            return
        if node.threshold is not None:
            walk(node.le, conds + [Condition(node.attribute, node.index, "<=", node.threshold)])
            walk(node.gt, conds + [Condition(node.attribute, node.index, ">", node.threshold)])
        else:
            for value, child in node.branches.items():
                walk(child, conds + [Condition(node.attribute, node.index, "=", value)])

    walk(tree, [])
    return RuleSet(tuple(rules))


# --- Evaluation ------------------------------------------------------------------


@dataclass(frozen=True)
class EvalReport:
    """Accuracy, probability RMSE and a true-by-predicted confusion matrix."""

    accuracy: float
    rmse: float
    confusion: tuple[tuple[int, ...], ...]
    classes: tuple[str, ...]


def evaluate(tree: TreeNode, test: Dataset) -> EvalReport:
    """Score a tree on a labeled dataset.

    RMSE compares each leaf's class distribution against the one-hot
    truth, averaged over all N*K prediction-class pairs, K being the full
    label domain size.
    """
    if not test.instances:
        raise EmptyDataset("evaluate needs a non-empty test set")
    domain = test.label.domain
    pos = {c: i for i, c in enumerate(domain)}
    k = len(domain)
    confusion = [[0] * k for _ in range(k)]
    correct = 0
    sq = 0.0
    for inst in test.instances:
        label, dist = predict(tree, inst)
        confusion[pos[inst.label]][pos[label]] += 1
        if label == inst.label:
            correct += 1
        for c in domain:
            truth = 1.0 if c == inst.label else 0.0
            sq += (dist.get(c, 0.0) - truth) ** 2
    n = len(test.instances)
    return EvalReport(
        accuracy=correct / n,
        rmse=math.sqrt(sq / (n * k)),
        confusion=tuple(tuple(row) for row in confusion),
        classes=domain,
    )


def split_dataset(data: Dataset, train_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Deterministic stratified train/test split.

    The train size is round(N * fraction). Each class contributes its
    proportional share, remainders going to the classes with the largest
    fractional quota (ties by label declaration order). Selection within
    a class is a seeded PCG64 permutation, so a given seed always yields
    the same split. Both halves preserve the original instance order.
    """
    if not 0.0 < train_fraction < 1.0:
        raise InvalidFraction(f"train_fraction must be in (0, 1), got {train_fraction}")
    n = len(data.instances)
    if n == 0:
        raise EmptyDataset("split_dataset needs a non-empty dataset")
    n_train = int(math.floor(n * train_fraction + 0.5))

    by_class: dict[str, list[int]] = {c: [] for c in data.label.domain}
    for i, inst in enumerate(data.instances):
        by_class[inst.label].append(i)

    quotas = {c: len(idx) * n_train / n for c, idx in by_class.items() if idx}
    alloc = {c: int(math.floor(q)) for c, q in quotas.items()}
    extra = n_train - sum(alloc.values())
    candidates = sorted(
        (c for c in quotas if alloc[c] < len(by_class[c])),
        key=lambda c: (-(quotas[c] - alloc[c]), data.label.domain.index(c)),
    )
    for c in candidates:
        if extra == 0:
            break
        alloc[c] += 1
        extra -= 1

    rng = np.random.Generator(np.random.PCG64(seed))
    train_idx: set[int] = set()
    for c in data.label.domain:
        idx = by_class[c]
        if not idx:
            continue
        perm = rng.permutation(len(idx))
        train_idx.update(idx[int(p)] for p in perm[: alloc[c]])

    train = [inst for i, inst in enumerate(data.instances) if i in train_idx]
    test = [inst for i, inst in enumerate(data.instances) if i not in train_idx]
    return data.with_instances(train), data.with_instances(test)


# --- Serialization -----------------------------------------------------------------


def tree_to_json(tree: TreeNode) -> dict:
    if isinstance(tree, Leaf):
        return {
            "type": "leaf",
            "class": tree.label,
            "n": tree.n,
            "distribution": dict(tree.distribution),
        }
    if tree.threshold is not None:
        return {
            "type": "split",
            "attribute": tree.attribute,
            "index": tree.index,
            "threshold": tree.threshold,
            "le": tree_to_json(tree.le),
            "gt": tree_to_json(tree.gt),
        }
    return {
        "type": "split",
        "attribute": tree.attribute,
        "index": tree.index,
        "branches": {v: tree_to_json(c) for v, c in tree.branches.items()},
    }


def tree_from_json(obj: dict) -> TreeNode:
    if obj["type"] == "leaf":
        return Leaf(label=obj["class"], distribution=dict(obj["distribution"]), n=obj["n"])
    if "threshold" in obj:
        return Split(
            attribute=obj["attribute"],
            index=obj["index"],
            threshold=obj["threshold"],
            le=tree_from_json(obj["le"]),
            gt=tree_from_json(obj["gt"]),
        )
    return Split(
        attribute=obj["attribute"],
        index=obj["index"],
        branches={v: tree_from_json(c) for v, c in obj["branches"].items()},
    )


def schema_to_json(attributes, label: AttributeSpec) -> dict:
    columns = []
    for spec in list(attributes) + [label]:
        col = {"name": spec.name, "kind": spec.kind}
        if spec.kind == NOMINAL:
            col["domain"] = list(spec.domain)
        columns.append(col)
    return {"columns": columns, "label": label.name}


def schema_from_json(obj: dict) -> tuple[tuple[AttributeSpec, ...], AttributeSpec]:
    label_name = obj["label"]
    attributes = []
    label = None
    for col in obj["columns"]:
        spec = AttributeSpec(col["name"], col["kind"], tuple(col.get("domain", ())))
        if spec.name == label_name:
            label = spec
        else:
            attributes.append(spec)
    if label is None:
        raise ValueError(f"schema names label {label_name!r} but has no such column")
    return tuple(attributes), label


MODEL_FORMAT = "sacmine-tree"


def save_model(tree: TreeNode, attributes, label: AttributeSpec, path) -> None:
    doc = {
        "format": MODEL_FORMAT,
        "version": 1,
        "schema": schema_to_json(attributes, label),
        "tree": tree_to_json(tree),
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_model(path) -> tuple[TreeNode, tuple[AttributeSpec, ...], AttributeSpec]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if doc.get("format") != MODEL_FORMAT:
        raise ValueError(f"{path}: not a {MODEL_FORMAT} file")
    attributes, label = schema_from_json(doc["schema"])
    return tree_from_json(doc["tree"]), attributes, label


# --- Dataset CSV with sidecar schema ------------------------------------------------


def default_schema_path(csv_path) -> Path:
    return Path(csv_path).with_suffix(".schema.json")


def write_dataset_csv(data: Dataset, csv_path, schema_path=None) -> None:
    csv_path = Path(csv_path)
    schema_path = default_schema_path(csv_path) if schema_path is None else Path(schema_path)
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([a.name for a in data.attributes] + [data.label.name])
        for inst in data.instances:
            row = [repr(v) if isinstance(v, float) else v for v in inst.values]
            writer.writerow(row + [inst.label])
    schema_path.write_text(
        json.dumps(schema_to_json(data.attributes, data.label), indent=2) + "\n",
        encoding="utf-8",
    )


def _column_map(header, names):
    header = [c.strip() for c in header]
    if sorted(header) != sorted(names):
        raise MissingHeader(f"expected columns {sorted(names)}, got {sorted(header)}")
    return [header.index(name) for name in names]


def read_dataset_csv(csv_path, schema_path=None) -> Dataset:
    """Load a labeled dataset; the sidecar schema defaults to <name>.schema.json."""
    csv_path = Path(csv_path)
    schema_path = default_schema_path(csv_path) if schema_path is None else Path(schema_path)
    schema = json.loads(schema_path.read_text(encoding="utf-8"))
    attributes, label = schema_from_json(schema)
    names = [a.name for a in attributes] + [label.name]
    instances = []
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MissingHeader(f"{csv_path} is empty") from None
        positions = _column_map(header, names)
        for row in reader:
            if not row:
                continue
            cells = [row[p].strip() for p in positions]
            values = tuple(
                float(cell) if spec.kind == NUMERIC else cell
                for spec, cell in zip(attributes, cells[:-1])
            )
            instances.append(Instance(values, cells[-1]))
    return Dataset(attributes, label, tuple(instances))


def read_instances_csv(csv_path, attributes) -> list[tuple]:
    """Read unlabeled rows for prediction; any label column is ignored."""
    names = [a.name for a in attributes]
    rows = []
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MissingHeader(f"{csv_path} is empty") from None
        header = [c.strip() for c in header]
        missing = [n for n in names if n not in header]
        if missing:
            raise MissingHeader(f"missing columns {missing}")
        positions = [header.index(n) for n in names]
        for row in reader:
            if not row:
                continue
            rows.append(
                tuple(
                    float(row[p].strip()) if spec.kind == NUMERIC else row[p].strip()
                    for spec, p in zip(attributes, positions)
                )
            )
    return rows
