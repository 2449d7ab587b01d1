"""
非交叉划分组合学
集合划分、非交叉判定、NC(k) 枚举、Kreweras 补、并（join）与 δ 指示函数
"""

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

from ..core import config
from ..core.errors import ValidationError


Block = Tuple[int, ...]
MultiIndex = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class SetPartition:
    """{1..k} 的集合划分，块内升序，块按最小元排序"""
    k: int
    blocks: Tuple[Block, ...]

    def __eq__(self, other):
        if not isinstance(other, SetPartition):
            return NotImplemented
        return self.k == other.k and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.k, self.blocks))

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        if any(len(b) == 0 for b in blocks):
            raise ValidationError("划分中存在空块")
        elements = [x for b in blocks for x in b]
        if sorted(elements) != list(range(1, self.k + 1)):
            raise ValidationError(f"块不构成 {{1..{self.k}}} 的划分: {blocks}")
        object.__setattr__(self, 'blocks', blocks)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> 'SetPartition':
        k = sum(len(b) for b in blocks)
        return cls(k, tuple(tuple(b) for b in blocks))

    @classmethod
    def parse(cls, text: str) -> 'SetPartition':
        """解析 "{1,5}{2}{3,4}{6}" 形式"""
        groups = re.findall(r"\{([^{}]*)\}", text)
        if not groups or re.sub(r"\{[^{}]*\}", "", text).strip():
            raise ValidationError(f"无法解析划分: {text!r}")
        try:
            blocks = [tuple(int(x) for x in g.split(",")) for g in groups]
        except ValueError as e:
            raise ValidationError(f"无法解析划分: {text!r}") from e
        return cls.from_blocks(blocks)

    @property
    def size(self) -> int:
        """块数"""
        return len(self.blocks)

    def labels(self) -> Tuple[int, ...]:
        """每个元素所在块的编号（0 起）"""
        label = [0] * (self.k + 1)
        for n, block in enumerate(self.blocks):
            for x in block:
                label[x] = n
        return tuple(label[1:])

    def __str__(self):
        return "".join("{" + ",".join(str(x) for x in b) + "}" for b in self.blocks)


class NCPartition(SetPartition):
    """非交叉划分"""

    def __post_init__(self):
        super().__post_init__()
        if not is_noncrossing(self):
            raise ValidationError(f"划分存在交叉: {self}")

    @classmethod
    def of(cls, p: SetPartition) -> 'NCPartition':
        return cls(p.k, p.blocks)


def is_noncrossing(p: SetPartition) -> bool:
    """
    非交叉判定

    对每个块中相邻的两个元素 x<y，夹在中间的元素所在的块必须完全落在 (x, y) 内。
    """
    label = p.labels()
    spans = [(b[0], b[-1]) for b in p.blocks]
    for block in p.blocks:
        for x, y in zip(block, block[1:]):
            for z in range(x + 1, y):
                lo, hi = spans[label[z - 1]]
                if lo < x or hi > y:
                    return False
    return True


def zero_partition(k: int) -> NCPartition:
    """0_k：全部为单点块"""
    return NCPartition(k, tuple((i,) for i in range(1, k + 1)))


def one_partition(k: int) -> NCPartition:
    """1_k：只有一个块"""
    return NCPartition(k, (tuple(range(1, k + 1)),))


def set_partitions(k: int) -> Iterator[SetPartition]:
    """穷举 {1..k} 的全部集合划分（限制增长串）"""
    def grow(prefix: List[int], used: int):
        if len(prefix) == k:
            blocks = [[] for _ in range(used)]
            for x, label in enumerate(prefix, start=1):
                blocks[label].append(x)
            yield SetPartition(k, tuple(tuple(b) for b in blocks))
            return
        for label in range(used + 1):
            prefix.append(label)
            yield from grow(prefix, max(used, label + 1))
            prefix.pop()

    if k < 1:
        return
    yield from grow([], 0)


def _nc_blocks(elements: Tuple[int, ...]) -> Iterator[Tuple[Block, ...]]:
    """有序元素列上的非交叉划分：首元素所在块把其余部分切成相互独立的区间"""
    if not elements:
        yield ()
        return

    def chains(block: Tuple[int, ...], last: int):
        # block 当前以 elements[last] 结尾
        for rest in _nc_blocks(elements[last + 1:]):
            yield (block,) + rest
        for nxt in range(last + 1, len(elements)):
            gap = elements[last + 1:nxt]
            for inner in _nc_blocks(gap):
                for tail in chains(block + (elements[nxt],), nxt):
                    yield inner + tail

    yield from chains((elements[0],), 0)


def _canonical_key(p: SetPartition):
    return p.blocks


@lru_cache(maxsize=None)
def _enumerate_nc_cached(k: int) -> Tuple[NCPartition, ...]:
    found = {NCPartition(k, blocks) for blocks in _nc_blocks(tuple(range(1, k + 1)))}
    return tuple(sorted(found, key=_canonical_key))


def enumerate_nc(k: int) -> List[NCPartition]:
    """
    按规范顺序枚举 NC(k)

    规范顺序为块元组的字典序，0_k 排在最前，保证 Gram/Weingarten 矩阵的行序可复现。
    """
    config.check_range("k", k, 'nc_max_k')
    return list(_enumerate_nc_cached(k))


def kreweras(p: SetPartition) -> NCPartition:
    """
    Kreweras 补 p^c

    把块写成循环置换 P（块内升序为一个轮换），γ = (1 2 … k)，
    则 p^c 的块就是 P⁻¹∘γ 的轮换。与交错点定义等价。
    """
    if not is_noncrossing(p):
        raise ValidationError(f"Kreweras 补要求非交叉划分: {p}")
    k = p.k
    inverse = {}
    for block in p.blocks:
        for x, y in zip(block, block[1:] + block[:1]):
            inverse[y] = x
    image = {i: inverse[i % k + 1] for i in range(1, k + 1)}

    seen = set()
    blocks = []
    for start in range(1, k + 1):
        if start in seen:
            continue
        cycle = []
        x = start
        while x not in seen:
            seen.add(x)
            cycle.append(x)
            x = image[x]
        blocks.append(tuple(cycle))
    return NCPartition(k, tuple(blocks))


def interleave(p: SetPartition, q: SetPartition) -> SetPartition:
    """把 p 放在奇数点 1,3,5…，q 放在偶数点 2,4,6…（i' 紧跟 i 之后）"""
    if p.k != q.k:
        raise ValidationError(f"划分大小不一致: {p.k} != {q.k}")
    blocks = [tuple(2 * x - 1 for x in b) for b in p.blocks]
    blocks += [tuple(2 * x for x in b) for b in q.blocks]
    return SetPartition(2 * p.k, tuple(blocks))


def kreweras_by_interleaving(p: SetPartition) -> NCPartition:
    """按定义求 Kreweras 补：与 p 交错后仍非交叉的最粗划分，仅用于校验"""
    candidates = [q for q in enumerate_nc(p.k) if is_noncrossing(interleave(p, q))]
    coarsest = min(len(q.blocks) for q in candidates)
    best = [q for q in candidates if len(q.blocks) == coarsest]
    if len(best) != 1:
        raise ValidationError(f"Kreweras 补不唯一: {p}")
    return best[0]


def delta(p: SetPartition, j: MultiIndex) -> int:
    """δ_pj：j 在 p 的每个块上取常值时为 1"""
    if len(j) != p.k:
        raise ValidationError(f"多重下标长度 {len(j)} 与划分大小 {p.k} 不一致")
    for block in p.blocks:
        first = j[block[0] - 1]
        if any(j[x - 1] != first for x in block[1:]):
            return 0
    return 1


def join(p: SetPartition, q: SetPartition) -> SetPartition:
    """p ∨ q：两组块的连通分支"""
    if p.k != q.k:
        raise ValidationError(f"划分大小不一致: {p.k} != {q.k}")
    parent = list(range(p.k + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in p.blocks + q.blocks:
        root = find(block[0])
        for x in block[1:]:
            parent[find(x)] = root

    groups = {}
    for x in range(1, p.k + 1):
        groups.setdefault(find(x), []).append(x)
    return SetPartition(p.k, tuple(tuple(g) for g in groups.values()))


def catalan(k: int) -> int:
    """C_k = (2k)!/(k!(k+1)!)"""
    if k < 0:
        raise ValidationError(f"k 必须非负: {k}")
    return math.comb(2 * k, k) // (k + 1)
