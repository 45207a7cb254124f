__all__ = (
    "TreeDecomposition",
    "gaifman",
    "scopes",
    "eliminate",
    "treewidth",
    "twms",
    "component_twms",
    "overlap",
    "find_overlap_pair",
    "validate_decomposition",
)


import itertools
import typing

import networkx as nx

from . import context as context_
from . import errors
from .structures import RelationalStructure, ValuedStructure


Vertex = str
Bag = typing.FrozenSet[Vertex]
ScopeFamily = typing.AbstractSet[Bag]
OverlapTuple = typing.Tuple[str, typing.Tuple[int, ...]]


class TreeDecomposition(typing.NamedTuple):
    bags: typing.Tuple[Bag, ...]
    # -1 at the root
    parents: typing.Tuple[int, ...]

    def get_width(self) -> int:
        return max((len(bag) - 1 for bag in self.bags), default=-1)

    def to_tree(self) -> nx.Graph:
        tree = nx.Graph()
        tree.add_nodes_from(range(len(self.bags)))
        tree.add_edges_from((node, parent) for node, parent in enumerate(self.parents)
                            if parent >= 0)
        return tree


def gaifman(structure: RelationalStructure) -> nx.Graph:
    universe = structure.get_universe()
    graph = nx.Graph()
    graph.add_nodes_from(universe)

    for _, args in structure.iter_tuples():
        for arg1, arg2 in itertools.combinations(sorted(set(args)), 2):
            graph.add_edge(universe[arg1], universe[arg2])

    return graph


def scopes(structure: RelationalStructure) -> typing.Set[Bag]:
    universe = structure.get_universe()
    return {frozenset(universe[arg] for arg in args) for _, args in structure.iter_tuples()}


def eliminate(graph: nx.Graph, order: typing.Sequence[Vertex]) -> TreeDecomposition:
    assert set(order) == set(graph.nodes), repr(order)
    position_of = {vertex: position for position, vertex in enumerate(order)}
    filled_graph = nx.Graph(graph)
    bags = []
    later_neighbors_list = []

    for vertex in order:
        later_neighbors = [neighbor for neighbor in filled_graph.neighbors(vertex)
                           if position_of[neighbor] > position_of[vertex]]
        filled_graph.add_edges_from(itertools.combinations(later_neighbors, 2))
        bags.append(frozenset([vertex, *later_neighbors]))
        later_neighbors_list.append(later_neighbors)

    root = len(order) - 1
    parents = []

    for position, later_neighbors in enumerate(later_neighbors_list):
        if position == root:
            parents.append(-1)
        elif len(later_neighbors) == 0:
            parents.append(root)
        else:
            parents.append(min(position_of[neighbor] for neighbor in later_neighbors))

    return TreeDecomposition(tuple(bags), tuple(parents))


def treewidth(graph: nx.Graph, *, context: typing.Optional[context_.Context]=None
              ) -> typing.Tuple[int, TreeDecomposition]:
    context = context_.get_context(context)
    vertices = list(graph.nodes)
    number_of_vertices = len(vertices)
    context.check_limit("max_treewidth_vertices", number_of_vertices)
    adjacencies = _make_adjacencies(graph, vertices)
    full_mask = (1 << number_of_vertices) - 1
    # minimum over orderings eliminating exactly the vertices of each subset first
    widths = {0: -1}
    choices = {}

    for mask in range(1, full_mask + 1):
        best_width = number_of_vertices
        best_vertex = -1

        for vertex in _iter_bits(mask):
            rest = mask & ~(1 << vertex)
            width = max(widths[rest], _count_bits(_reach(adjacencies, rest, vertex)))

            if width < best_width:
                best_width = width
                best_vertex = vertex

        widths[mask] = best_width
        choices[mask] = best_vertex

    order = []
    mask = full_mask

    while mask != 0:
        vertex = choices[mask]
        order.append(vertices[vertex])
        mask &= ~(1 << vertex)

    order.reverse()
    decomposition = eliminate(graph, order)
    assert decomposition.get_width() == max(widths[full_mask], 0), repr(decomposition)
    context.get_logger().debug("treewidth done: vertices={!r} width={!r}"
                               .format(number_of_vertices, widths[full_mask]))
    return max(widths[full_mask], 0), decomposition


def twms(structure: RelationalStructure, *, context: typing.Optional[context_.Context]=None
         ) -> typing.Tuple[int, TreeDecomposition]:
    context = context_.get_context(context)
    context.check_limit("max_twms_vertices", structure.get_size())
    solver = _TwmsSolver(structure)
    width = 0

    while True:
        roots = []

        for component in solver.get_components():
            root = solver.decompose(component, width)

            if root is None:
                break

            roots.append(root)
        else:
            decomposition = _contract_scope_subsets(solver.make_decomposition(roots), width
                                                    , scopes(structure))
            context.get_logger().debug("twms done: vertices={!r} width={!r}"
                                       .format(structure.get_size(), width))
            return width, decomposition

        width += 1


def component_twms(structure: RelationalStructure, *
                   , context: typing.Optional[context_.Context]=None
                   ) -> typing.List[typing.Tuple[typing.FrozenSet[Vertex], int]]:
    context = context_.get_context(context)
    context.check_limit("max_twms_vertices", structure.get_size())
    solver = _TwmsSolver(structure)
    results = []

    for component in solver.get_components():
        width = 0

        while solver.decompose(component, width) is None:
            width += 1

        results.append((solver.get_vertex_set(component), width))

    return results


def overlap(structure: ValuedStructure) -> int:
    pair = find_overlap_pair(structure)

    if pair is None:
        return 0

    (_, args1), (_, args2) = pair
    return len(set(args1) & set(args2))


def find_overlap_pair(structure: ValuedStructure
                      ) -> typing.Optional[typing.Tuple[OverlapTuple, OverlapTuple]]:
    positive_tuples = [(symbol_name, args) for symbol_name, args, _
                       in structure.iter_positive_tuples()]
    best_pair = None
    best_size = -1

    for tuple1, tuple2 in itertools.combinations(positive_tuples, 2):
        size = len(set(tuple1[1]) & set(tuple2[1]))

        if size > best_size:
            best_pair = tuple1, tuple2
            best_size = size

    return best_pair


def validate_decomposition(graph: nx.Graph, decomposition: TreeDecomposition
                           , scope_family: ScopeFamily=frozenset()) -> typing.Tuple[int, int]:
    bags = decomposition.bags
    parents = decomposition.parents

    if len(bags) == 0 or len(parents) != len(bags):
        raise errors.NotADecompositionError("tree-shape")

    for node, parent in enumerate(parents):
        if parent < -1 or parent >= len(bags) or parent == node:
            raise errors.NotADecompositionError("tree-shape", node)

    tree = decomposition.to_tree()

    if not nx.is_tree(tree):
        raise errors.NotADecompositionError("tree-shape")

    for node, bag in enumerate(bags):
        for vertex in bag:
            if not graph.has_node(vertex):
                raise errors.NotADecompositionError("unknown-vertex", node)

    vertex_2_nodes: typing.Dict[Vertex, typing.List[int]] = {vertex: [] for vertex
                                                              in graph.nodes}

    for node, bag in enumerate(bags):
        for vertex in bag:
            vertex_2_nodes[vertex].append(node)

    for vertex, nodes in vertex_2_nodes.items():
        if len(nodes) == 0:
            raise errors.NotADecompositionError("vertex-coverage")

    for vertex1, vertex2 in graph.edges:
        if not any(vertex2 in bags[node] for node in vertex_2_nodes[vertex1]):
            raise errors.NotADecompositionError("edge-coverage")

    for vertex, nodes in vertex_2_nodes.items():
        if not nx.is_connected(tree.subgraph(nodes)):
            raise errors.NotADecompositionError("connectivity", nodes[0])

    width_modulo_scopes = max((len(bag) - 1 for bag in bags if bag not in scope_family)
                              , default=0)
    return decomposition.get_width(), max(width_modulo_scopes, 0)


class _TwmsSolver:
    def __init__(self, structure: RelationalStructure) -> None:
        graph = gaifman(structure)
        self._vertices = list(graph.nodes)
        self._adjacencies = _make_adjacencies(graph, self._vertices)
        vertex_2_index = {vertex: index for index, vertex in enumerate(self._vertices)}
        scope_masks = {sum(1 << vertex_2_index[vertex] for vertex in scope) for scope
                       in scopes(structure)}
        self._scope_masks = [scope_mask for scope_mask in scope_masks
                             if not any(scope_mask != other and scope_mask & ~other == 0
                                        for other in scope_masks)]
        self._scope_masks.sort()
        self._memo: typing.Dict[typing.Tuple[int, int], typing.Optional[_Node]] = {}

    def get_components(self) -> typing.List[int]:
        return _split_components(self._adjacencies, (1 << len(self._vertices)) - 1)

    def get_vertex_set(self, mask: int) -> typing.FrozenSet[Vertex]:
        return frozenset(self._vertices[vertex] for vertex in _iter_bits(mask))

    def decompose(self, component: int, width: int) -> typing.Optional["_Node"]:
        key = component, width

        if key in self._memo.keys():
            return self._memo[key]

        separator = 0

        for vertex in _iter_bits(component):
            separator |= self._adjacencies[vertex]

        separator &= ~component
        result = None

        for bag in self._iter_bags(component, separator, width):
            children = []

            for subcomponent in _split_components(self._adjacencies, component & ~bag):
                child = self.decompose(subcomponent, width)

                if child is None:
                    break

                children.append(child)
            else:
                result = _Node(bag, children)
                break

        self._memo[key] = result
        return result

    def make_decomposition(self, roots: typing.Sequence["_Node"]) -> TreeDecomposition:
        bags: typing.List[Bag] = []
        parents: typing.List[int] = []
        stack = [(root, -1 if i == 0 else 0) for i, root in enumerate(roots)]
        stack.reverse()

        while len(stack) >= 1:
            node, parent = stack.pop()
            bags.append(self.get_vertex_set(node.bag))
            parents.append(parent)
            index = len(bags) - 1

            for child in reversed(node.children):
                stack.append((child, index))

        return TreeDecomposition(tuple(bags), tuple(parents))

    def _iter_bags(self, component: int, separator: int, width: int) -> typing.Iterator[int]:
        seen: typing.Set[int] = set()
        separator_size = _count_bits(separator)

        for scope_mask in self._scope_masks:
            if separator & ~scope_mask != 0 or scope_mask & component == 0:
                continue

            inner = scope_mask & component

            for submask in sorted(_iter_submasks(inner), key=_count_bits, reverse=True):
                bag = separator | submask

                if bag not in seen:
                    seen.add(bag)
                    yield bag

        if separator_size > width:
            return

        component_vertices = list(_iter_bits(component))

        for size in range(min(width + 1 - separator_size, len(component_vertices)), 0, -1):
            for chosen in itertools.combinations(component_vertices, size):
                bag = separator

                for vertex in chosen:
                    bag |= 1 << vertex

                if bag not in seen:
                    seen.add(bag)
                    yield bag


class _Node(typing.NamedTuple):
    bag: int
    children: typing.List["_Node"]


def _contract_scope_subsets(decomposition: TreeDecomposition, width: int
                            , scope_family: ScopeFamily) -> TreeDecomposition:
    tree = decomposition.to_tree()
    bags = dict(enumerate(decomposition.bags))

    while True:
        for node in sorted(tree.nodes):
            bag = bags[node]

            if len(bag) <= width + 1 or bag in scope_family:
                continue

            supersets = [other for other in tree.nodes if bags[other] > bag]

            if len(supersets) == 0:
                continue

            target = min(supersets, key=lambda other: (nx.shortest_path_length(tree, node, other)
                                                       , other))
            neighbor = nx.shortest_path(tree, node, target)[1]
            tree = nx.contracted_nodes(tree, neighbor, node, self_loops=False)
            del bags[node]
            break
        else:
            break

    nodes = sorted(tree.nodes)
    root = nodes[0]
    node_2_index = {node: index for index, node in enumerate(nodes)}
    predecessors = dict(nx.bfs_predecessors(tree, root))
    parents = tuple(-1 if node == root else node_2_index[predecessors[node]] for node in nodes)
    return TreeDecomposition(tuple(bags[node] for node in nodes), parents)


def _make_adjacencies(graph: nx.Graph, vertices: typing.Sequence[Vertex]) -> typing.List[int]:
    vertex_2_index = {vertex: index for index, vertex in enumerate(vertices)}
    adjacencies = [0] * len(vertices)

    for vertex1, vertex2 in graph.edges:
        if vertex1 == vertex2:
            continue

        index1 = vertex_2_index[vertex1]
        index2 = vertex_2_index[vertex2]
        adjacencies[index1] |= 1 << index2
        adjacencies[index2] |= 1 << index1

    return adjacencies


def _reach(adjacencies: typing.Sequence[int], inner: int, vertex: int) -> int:
    visited = 1 << vertex
    frontier = visited
    reached = 0

    while frontier != 0:
        next_frontier = 0

        for other in _iter_bits(frontier):
            next_frontier |= adjacencies[other]

        next_frontier &= ~visited
        visited |= next_frontier
        reached |= next_frontier & ~inner
        frontier = next_frontier & inner

    return reached


def _split_components(adjacencies: typing.Sequence[int], mask: int) -> typing.List[int]:
    components = []
    rest = mask

    while rest != 0:
        seed = rest & -rest
        component = seed
        frontier = seed

        while frontier != 0:
            next_frontier = 0

            for vertex in _iter_bits(frontier):
                next_frontier |= adjacencies[vertex]

            next_frontier &= mask & ~component
            component |= next_frontier
            frontier = next_frontier

        components.append(component)
        rest &= ~component

    return components


def _iter_bits(mask: int) -> typing.Iterator[int]:
    while mask != 0:
        low_bit = mask & -mask
        yield low_bit.bit_length() - 1
        mask ^= low_bit


def _iter_submasks(mask: int) -> typing.Iterator[int]:
    submask = mask

    while submask != 0:
        yield submask
        submask = (submask - 1) & mask


def _count_bits(mask: int) -> int:
    return bin(mask).count("1")
