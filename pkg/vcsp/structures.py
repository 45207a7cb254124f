__all__ = (
    "Symbol",
    "Signature",
    "Table",
    "ValuedStructure",
    "RelationalStructure",
    "check_same_signature",
    "pos",
    "restrict",
    "with_symbol",
    "parse_structure",
    "serialize_structure",
)


import itertools
import json
import typing

from . import errors
from . import extrat
from . import record


ExtRat = extrat.ExtRat
Args = typing.Tuple[int, ...]


class Symbol(typing.NamedTuple):
    name: str
    arity: int


class Signature:
    def __init__(self, symbols: typing.Iterable[Symbol]) -> None:
        self._symbols = tuple(Symbol(*symbol) for symbol in symbols)
        self._name_2_arity: typing.Dict[str, int] = {}

        for symbol in self._symbols:
            if symbol.name in self._name_2_arity.keys():
                raise errors.SchemaError("duplicate symbol: symbol_name={!r}".format(symbol.name))

            if symbol.arity < 1:
                raise errors.SchemaError("non-positive arity: symbol_name={!r} arity={!r}"
                                         .format(symbol.name, symbol.arity))

            self._name_2_arity[symbol.name] = symbol.arity

    def get_symbols(self) -> typing.Tuple[Symbol, ...]:
        return self._symbols

    def get_names(self) -> typing.List[str]:
        return [symbol.name for symbol in self._symbols]

    def get_arity(self, symbol_name: str) -> int:
        return self._name_2_arity[symbol_name]

    def has_symbol(self, symbol_name: str) -> bool:
        return symbol_name in self._name_2_arity.keys()

    def get_max_arity(self) -> int:
        return max((symbol.arity for symbol in self._symbols), default=0)

    def extend(self, symbol: Symbol) -> "Signature":
        return Signature(self._symbols + (symbol,))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented

        return self._name_2_arity == other._name_2_arity

    def __hash__(self) -> int:
        return hash(frozenset(self._name_2_arity.items()))

    def __repr__(self) -> str:
        return "Signature({!r})".format(list(self._symbols))


class Table(typing.NamedTuple):
    default: ExtRat
    entries: typing.Dict[Args, ExtRat]


class ValuedStructure:
    def __init__(self, signature: Signature, universe: typing.Sequence[str]
                 , tables: typing.Mapping[str, Table]) -> None:
        self._signature = signature
        self._universe = tuple(universe)
        self._element_2_index: typing.Dict[str, int] = {}

        if len(self._universe) == 0:
            raise errors.SchemaError("empty universe")

        for index, element in enumerate(self._universe):
            if element in self._element_2_index.keys():
                raise errors.SchemaError("duplicate element: element={!r}".format(element))

            self._element_2_index[element] = index

        self._tables: typing.Dict[str, Table] = {}

        for symbol in signature.get_symbols():
            table = tables.get(symbol.name, None)

            if table is None:
                self._tables[symbol.name] = Table(extrat.ZERO, {})
                continue

            entries = {}

            for args, value in table.entries.items():
                assert len(args) == symbol.arity, repr((symbol, args))
                assert all(0 <= arg < len(self._universe) for arg in args), repr(args)

                if value != table.default:
                    entries[args] = value

            self._tables[symbol.name] = Table(table.default, entries)

        self._positive_tuples: typing.Optional[typing.List[typing.Tuple[str, Args, ExtRat]]] = None

    @classmethod
    def from_entries(cls, signature: Signature, universe: typing.Sequence[str]
                     , defaults: typing.Mapping[str, ExtRat]
                     , entries: typing.Iterable[typing.Tuple[str, typing.Sequence[str], ExtRat]]
                     ) -> "ValuedStructure":
        element_2_index = {element: index for index, element in enumerate(universe)}
        tables: typing.Dict[str, Table] = {}

        for symbol_name, default in defaults.items():
            if not signature.has_symbol(symbol_name):
                raise errors.SchemaError("unknown symbol: symbol_name={!r}".format(symbol_name))

            tables[symbol_name] = Table(default, {})

        for symbol_name, arg_names, value in entries:
            if not signature.has_symbol(symbol_name):
                raise errors.SchemaError("unknown symbol: symbol_name={!r}".format(symbol_name))

            arity = signature.get_arity(symbol_name)

            if len(arg_names) != arity:
                raise errors.ArityMismatchError("arity mismatch: symbol_name={!r} arity={!r}"
                                                " args={!r}".format(symbol_name, arity, arg_names))

            args = []

            for arg_name in arg_names:
                index = element_2_index.get(arg_name, None)

                if index is None:
                    raise errors.UnknownElementError("unknown element: symbol_name={!r}"
                                                     " element={!r}".format(symbol_name, arg_name))

                args.append(index)

            table = tables.get(symbol_name, None)

            if table is None:
                table = Table(extrat.ZERO, {})
                tables[symbol_name] = table

            if tuple(args) in table.entries.keys():
                raise errors.SchemaError("duplicate entry: symbol_name={!r} args={!r}"
                                         .format(symbol_name, tuple(arg_names)))

            table.entries[tuple(args)] = value

        return cls(signature, universe, tables)

    def get_signature(self) -> Signature:
        return self._signature

    def get_universe(self) -> typing.Tuple[str, ...]:
        return self._universe

    def get_size(self) -> int:
        return len(self._universe)

    def get_index(self, element: str) -> int:
        index = self._element_2_index.get(element, None)

        if index is None:
            raise errors.UnknownElementError("unknown element: element={!r}".format(element))

        return index

    def get_table(self, symbol_name: str) -> Table:
        return self._tables[symbol_name]

    def get_value(self, symbol_name: str, args: Args) -> ExtRat:
        table = self._tables[symbol_name]
        return table.entries.get(args, table.default)

    def lookup(self, symbol_name: str, arg_names: typing.Sequence[str]) -> ExtRat:
        return self.get_value(symbol_name, tuple(self.get_index(arg_name) for arg_name
                                                 in arg_names))

    def iter_tuples(self, symbol_name: str) -> typing.Iterator[Args]:
        return itertools.product(range(len(self._universe))
                                 , repeat=self._signature.get_arity(symbol_name))

    def iter_values(self, symbol_name: str) -> typing.Iterator[typing.Tuple[Args, ExtRat]]:
        table = self._tables[symbol_name]

        if table.default.is_zero():
            for args in sorted(table.entries.keys()):
                yield args, table.entries[args]
        else:
            for args in self.iter_tuples(symbol_name):
                yield args, table.entries.get(args, table.default)

    def iter_positive_tuples(self) -> typing.Iterator[typing.Tuple[str, Args, ExtRat]]:
        if self._positive_tuples is None:
            self._positive_tuples = [(symbol_name, args, value) for symbol_name
                                     in self._signature.get_names() for args, value
                                     in self.iter_values(symbol_name) if value.is_positive()]

        return iter(self._positive_tuples)

    def iter_finite_tuples(self) -> typing.Iterator[typing.Tuple[str, Args, ExtRat]]:
        for symbol_name in self._signature.get_names():
            table = self._tables[symbol_name]

            if table.default.is_infinite():
                for args in sorted(table.entries.keys()):
                    yield symbol_name, args, table.entries[args]
            else:
                for args in self.iter_tuples(symbol_name):
                    value = table.entries.get(args, table.default)

                    if value.is_finite():
                        yield symbol_name, args, value

    def iter_infinite_tuples(self) -> typing.Iterator[typing.Tuple[str, Args]]:
        for symbol_name, args, value in self.iter_positive_tuples():
            if value.is_infinite():
                yield symbol_name, args

    def has_same_values(self, other: "ValuedStructure") -> bool:
        if self._signature != other._signature or self._universe != other._universe:
            return False

        for symbol_name in self._signature.get_names():
            table = self._tables[symbol_name]
            other_table = other._tables[symbol_name]

            if table.default == other_table.default:
                if table.entries != other_table.entries:
                    return False
            else:
                for args in self.iter_tuples(symbol_name):
                    if table.entries.get(args, table.default) != other_table.entries\
                        .get(args, other_table.default):
                        return False

        return True

    def rename(self, names: typing.Sequence[str]) -> "ValuedStructure":
        assert len(names) == len(self._universe), repr(names)
        return ValuedStructure(self._signature, names, self._tables)

    def __repr__(self) -> str:
        return "<ValuedStructure size={!r} symbols={!r}>".format(len(self._universe)
                                                                , self._signature.get_names())


class RelationalStructure:
    def __init__(self, signature: Signature, universe: typing.Sequence[str]
                 , relations: typing.Mapping[str, typing.Iterable[Args]]) -> None:
        self._signature = signature
        self._universe = tuple(universe)
        self._relations = {symbol_name: frozenset(relations.get(symbol_name, ()))
                           for symbol_name in signature.get_names()}

        for symbol_name, relation in self._relations.items():
            arity = signature.get_arity(symbol_name)

            for args in relation:
                assert len(args) == arity, repr((symbol_name, args))
                assert all(0 <= arg < len(self._universe) for arg in args), repr(args)

    @classmethod
    def from_tuples(cls, signature: Signature, universe: typing.Sequence[str]
                    , tuples: typing.Iterable[typing.Tuple[str, typing.Sequence[str]]]
                    ) -> "RelationalStructure":
        element_2_index = {element: index for index, element in enumerate(universe)}
        relations: typing.Dict[str, typing.Set[Args]] = {}

        for symbol_name, arg_names in tuples:
            if not signature.has_symbol(symbol_name):
                raise errors.SchemaError("unknown symbol: symbol_name={!r}".format(symbol_name))

            if len(arg_names) != signature.get_arity(symbol_name):
                raise errors.ArityMismatchError("arity mismatch: symbol_name={!r} args={!r}"
                                                .format(symbol_name, arg_names))

            for arg_name in arg_names:
                if arg_name not in element_2_index.keys():
                    raise errors.UnknownElementError("unknown element: element={!r}"
                                                     .format(arg_name))

            args = tuple(element_2_index[arg_name] for arg_name in arg_names)
            relations.setdefault(symbol_name, set()).add(args)

        return cls(signature, universe, relations)

    def get_signature(self) -> Signature:
        return self._signature

    def get_universe(self) -> typing.Tuple[str, ...]:
        return self._universe

    def get_size(self) -> int:
        return len(self._universe)

    def get_relation(self, symbol_name: str) -> typing.FrozenSet[Args]:
        return self._relations[symbol_name]

    def iter_tuples(self) -> typing.Iterator[typing.Tuple[str, Args]]:
        for symbol_name in self._signature.get_names():
            for args in sorted(self._relations[symbol_name]):
                yield symbol_name, args

    def __repr__(self) -> str:
        return "<RelationalStructure size={!r} tuples={!r}>".format(
            len(self._universe), sum(map(len, self._relations.values())))


def check_same_signature(structure1: ValuedStructure, structure2: ValuedStructure) -> None:
    if structure1.get_signature() != structure2.get_signature():
        raise errors.SignatureMismatchError("signature mismatch: signature1={!r} signature2={!r}"
                                            .format(structure1.get_signature()
                                                    , structure2.get_signature()))


def pos(structure: ValuedStructure) -> RelationalStructure:
    relations: typing.Dict[str, typing.List[Args]] = {}

    for symbol_name, args, _ in structure.iter_positive_tuples():
        relations.setdefault(symbol_name, []).append(args)

    return RelationalStructure(structure.get_signature(), structure.get_universe(), relations)


def restrict(structure: ValuedStructure, elements: typing.Iterable[str]) -> ValuedStructure:
    element_set = set(elements)

    for element in element_set:
        structure.get_index(element)

    old_indexes = [index for index, element in enumerate(structure.get_universe())
                   if element in element_set]
    old_index_2_new_index = {old_index: new_index for new_index, old_index
                             in enumerate(old_indexes)}
    tables = {}

    for symbol_name in structure.get_signature().get_names():
        table = structure.get_table(symbol_name)
        entries = {}

        for args, value in table.entries.items():
            if all(arg in old_index_2_new_index.keys() for arg in args):
                entries[tuple(old_index_2_new_index[arg] for arg in args)] = value

        tables[symbol_name] = Table(table.default, entries)

    universe = [structure.get_universe()[old_index] for old_index in old_indexes]
    return ValuedStructure(structure.get_signature(), universe, tables)


def with_symbol(structure: ValuedStructure, symbol_name: str, arity: int, default: ExtRat
                , entries: typing.Mapping[Args, ExtRat]) -> ValuedStructure:
    signature = structure.get_signature().extend(Symbol(symbol_name, arity))
    tables = {symbol_name2: structure.get_table(symbol_name2) for symbol_name2
              in structure.get_signature().get_names()}
    tables[symbol_name] = Table(default, dict(entries))
    return ValuedStructure(signature, structure.get_universe(), tables)


def parse_structure(data: typing.Union[bytes, str]) -> ValuedStructure:
    try:
        json_data = json.loads(data)
    except ValueError as exception:
        raise errors.SchemaError("malformed json: {}".format(exception)) from None

    structure_record = record.deserialize_record(_StructureRecord, json_data)
    signature = Signature(Symbol(symbol_record.name, symbol_record.arity) for symbol_record
                          in structure_record.signature)

    for symbol_name in structure_record.functions.keys():
        if not signature.has_symbol(symbol_name):
            raise errors.SchemaError("unknown symbol: symbol_name={!r}".format(symbol_name))

    defaults = {symbol_name: table_record.default for symbol_name, table_record
                in structure_record.functions.items()}
    entries = ((symbol_name, entry_record.args, entry_record.value) for symbol_name, table_record
               in structure_record.functions.items() for entry_record in table_record.entries)
    return ValuedStructure.from_entries(signature, structure_record.universe, defaults, entries)


def serialize_structure(structure: ValuedStructure) -> bytes:
    universe = structure.get_universe()
    functions = {}

    for symbol_name in structure.get_signature().get_names():
        table = structure.get_table(symbol_name)
        entry_records = tuple(_EntryRecord(tuple(universe[arg] for arg in args)
                                           , table.entries[args])
                              for args in sorted(table.entries.keys()))
        functions[symbol_name] = _TableRecord(table.default, entry_records)

    structure_record = _StructureRecord(
        signature=tuple(_SymbolRecord(symbol.name, symbol.arity) for symbol
                        in structure.get_signature().get_symbols()),
        universe=universe,
        functions=functions,
    )

    return json.dumps(record.serialize_record(structure_record), indent=1).encode() + b"\n"


class _SymbolRecord(typing.NamedTuple):
    name: record.String
    arity: record.Int


class _EntryRecord(typing.NamedTuple):
    args: record.Vector[record.String]
    value: record.Rational


class _TableRecord(typing.NamedTuple):
    default: record.Rational = extrat.ZERO
    entries: record.Vector[_EntryRecord] = ()


class _StructureRecord(typing.NamedTuple):
    signature: record.Vector[_SymbolRecord]
    universe: record.Vector[record.String]
    functions: record.Map[_TableRecord]
