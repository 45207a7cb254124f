import argparse
import json
import logging
import sys
import typing

import vcsp_recipes

from . import context as context_
from . import core
from . import errors
from . import extrat
from . import improvement
from . import lp
from . import mappings
from . import record
from . import search
from . import sherali
from . import structures
from . import width


def main(argv: typing.Optional[typing.Sequence[str]]=None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s"
                        , level=logging.DEBUG if args.verbose else logging.WARNING)
    limits = {limit_name: getattr(args, limit_name) for limit_name in _LIMIT_NAMES
              if getattr(args, limit_name) is not None}

    try:
        context = context_.Context(logger=logging.getLogger("vcsp"), **limits)
        result = args.handler(args, context)
    except errors.Error as error:
        print("vcsp: {}: {}".format(type(error).__name__, error), file=sys.stderr)
        return errors.get_exit_status(error)

    if result is not None:
        print(json.dumps(record.serialize_record(result)))

    return 0


def _make_parser() -> argparse.ArgumentParser:
    common_parser = argparse.ArgumentParser(add_help=False)
    common_parser.add_argument("--max-columns", type=int, default=None)
    common_parser.add_argument("--max-pivots", type=int, default=None)
    common_parser.add_argument("--max-maps", type=int, default=None)
    common_parser.add_argument("--verbose", action="store_true")
    common_parser.add_argument("-o", "--output", default=None)
    parser = argparse.ArgumentParser(prog="vcsp", description="valued structure analysis")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_command(name: str, handler: typing.Callable, *input_names: str
                    ) -> argparse.ArgumentParser:
        subparser = subparsers.add_parser(name, parents=[common_parser])
        subparser.set_defaults(handler=handler)

        for input_name in input_names:
            subparser.add_argument(input_name)

        return subparser

    add_command("opt", _do_opt, "structure1", "structure2")
    subparser = add_command("sa", _do_sa, "structure1", "structure2")
    subparser.add_argument("--level", type=int, required=True)
    subparser.add_argument("--bruteforce", action="store_true")
    subparser.add_argument("--no-canonical", action="store_true")
    subparser.add_argument("--dump-lp", default=None)
    add_command("improves", _do_improves, "structure1", "structure2")
    add_command("equiv", _do_equiv, "structure1", "structure2")
    add_command("is-core", _do_is_core, "structure")
    add_command("core", _do_core, "structure")
    add_command("core-weighting", _do_core_weighting, "structure")
    subparser = add_command("width", _do_width, "structure")
    subparser.add_argument("--measure", choices=("tw", "twms", "overlap"), default="twms")
    add_command("overlap", _do_overlap, "structure")
    subparser = add_command("sa-tight", _do_sa_tight, "structure")
    subparser.add_argument("--level", type=int, required=True)
    subparser = add_command("gap", _do_gap, "structure")
    subparser.add_argument("--kind", choices=("treewidth", "overlap"), required=True)
    subparser.add_argument("--level", type=int, required=True)
    subparser = add_command("search", _do_search, "structure1", "structure2")
    subparser.add_argument("--level", type=int, default=None)
    subparser = add_command("gen", _do_gen)
    subparser.add_argument("kind", choices=tuple(_GEN_KIND_2_GENERATOR.keys()))
    subparser.add_argument("--n", type=int, default=3)
    subparser.add_argument("--m", type=int, default=None)
    subparser.add_argument("--seed", type=int, default=0)
    add_command("validate-ifh", _do_validate_ifh, "structure1", "structure2", "witness")
    add_command("validate-decomp", _do_validate_decomp, "structure", "decomposition")
    subparser = add_command("core-width", _do_core_width, "structure")
    subparser.add_argument("--max-width", type=int, required=True)
    return parser


class _WeightedMappingRecord(typing.NamedTuple):
    map: record.Map[record.String]
    weight: record.Rational


class _TupleRecord(typing.NamedTuple):
    symbol: record.String
    args: record.Vector[record.String]


class _WeightRecord(typing.NamedTuple):
    symbol: record.String
    args: record.Vector[record.String]
    weight: record.Rational


class _DecompositionRecord(typing.NamedTuple):
    bags: record.Vector[record.Vector[record.String]]
    parents: record.Vector[record.Int]


class _OptRecord(typing.NamedTuple):
    opt: record.Rational
    map: record.Map[record.String]


class _SaRecord(typing.NamedTuple):
    opt_k: record.Rational
    tight_vs_bruteforce: record.Optional[record.Bool] = None


class _ImprovesRecord(typing.NamedTuple):
    answer: record.Bool
    witness: record.Optional[record.Vector[_WeightedMappingRecord]] = None


class _WitnessRecord(typing.NamedTuple):
    witness: record.Vector[_WeightedMappingRecord]
    answer: record.Optional[record.Bool] = None


class _EquivRecord(typing.NamedTuple):
    answer: record.Bool
    witness_forward: record.Optional[record.Vector[_WeightedMappingRecord]]
    witness_backward: record.Optional[record.Vector[_WeightedMappingRecord]]


class _IsCoreRecord(typing.NamedTuple):
    answer: record.Bool
    witness: record.Optional[record.Map[record.String]] = None


class _CoreRecord(typing.NamedTuple):
    collapse: record.Map[record.String]
    core_size: record.Int
    core_universe: record.Vector[record.String]


class _CoreWeightingRecord(typing.NamedTuple):
    weights: record.Vector[_WeightRecord]
    valid: record.Bool


class _WidthRecord(typing.NamedTuple):
    measure: record.String
    width: record.Int
    decomposition: record.Optional[_DecompositionRecord] = None


class _OverlapRecord(typing.NamedTuple):
    overlap: record.Int
    pair: record.Optional[record.Vector[_TupleRecord]] = None


class _TightnessRecord(typing.NamedTuple):
    answer: record.Bool
    core_size: record.Int
    twms: record.Int
    overlap: record.Int
    decomposition: _DecompositionRecord
    pair: record.Optional[record.Vector[_TupleRecord]] = None


class _SearchRecord(typing.NamedTuple):
    map: record.Map[record.String]
    cost: record.Rational
    infinite: record.Bool


class _ValidationRecord(typing.NamedTuple):
    answer: record.Bool
    violation: record.Optional[record.String] = None


class _DecompositionValidationRecord(typing.NamedTuple):
    answer: record.Bool
    width: record.Optional[record.Int] = None
    twms: record.Optional[record.Int] = None
    reason: record.Optional[record.String] = None
    node: record.Optional[record.Int] = None


class _CoreWidthRecord(typing.NamedTuple):
    answer: record.Bool
    treewidth: record.Int


def _do_opt(args: argparse.Namespace, context: context_.Context) -> _OptRecord:
    structure1, structure2 = _load_structures(args.structure1, args.structure2)
    value, mapping = mappings.opt_bruteforce(structure1, structure2, context=context)
    return _OptRecord(value, mapping.to_dict())


def _do_sa(args: argparse.Namespace, context: context_.Context) -> _SaRecord:
    structure1, structure2 = _load_structures(args.structure1, args.structure2)
    canonical = not args.no_canonical

    if args.dump_lp is not None:
        instance = sherali.build_sa(structure1, structure2, args.level, canonical=canonical
                                    , context=context)
        _write_file(args.dump_lp, lp.format_lp(instance.program).encode())

    value, _ = sherali.opt_k(structure1, structure2, args.level, canonical=canonical
                             , context=context)

    if not args.bruteforce:
        return _SaRecord(value)

    optimum, _ = mappings.opt_bruteforce(structure1, structure2, context=context)
    return _SaRecord(value, value == optimum)


def _do_improves(args: argparse.Namespace, context: context_.Context) -> _ImprovesRecord:
    structure1, structure2 = _load_structures(args.structure1, args.structure2)
    distribution = improvement.find_ifh(structure1, structure2, context=context)
    return _ImprovesRecord(distribution is not None, _make_witness(distribution))


def _do_equiv(args: argparse.Namespace, context: context_.Context) -> _EquivRecord:
    structure1, structure2 = _load_structures(args.structure1, args.structure2)
    forward_distribution = improvement.find_ifh(structure1, structure2, context=context)
    backward_distribution = None

    if forward_distribution is not None:
        backward_distribution = improvement.find_ifh(structure2, structure1, context=context)

    return _EquivRecord(forward_distribution is not None and backward_distribution is not None
                        , _make_witness(forward_distribution)
                        , _make_witness(backward_distribution))


def _do_is_core(args: argparse.Namespace, context: context_.Context) -> _IsCoreRecord:
    structure = _load_structure(args.structure)
    witness = core.is_core_witness(structure, context=context)

    if witness is None:
        return _IsCoreRecord(True)

    return _IsCoreRecord(False, witness.to_dict())


def _do_core(args: argparse.Namespace, context: context_.Context) -> _CoreRecord:
    structure = _load_structure(args.structure)
    core_result = core.compute_core(structure, context=context)

    if args.output is not None:
        _write_file(args.output, structures.serialize_structure(core_result.core))

    return _CoreRecord(core_result.collapse.to_dict(), core_result.core.get_size()
                       , core_result.core.get_universe())


def _do_core_weighting(args: argparse.Namespace, context: context_.Context
                       ) -> _CoreWeightingRecord:
    structure = _load_structure(args.structure)
    weighting = core.core_weighting(structure, context=context)
    universe = structure.get_universe()
    weight_records = tuple(_WeightRecord(symbol_name, tuple(universe[arg] for arg in args2)
                                         , extrat.ExtRat.from_fraction(weight))
                           for (symbol_name, args2), weight in sorted(weighting.weights.items()))
    valid = core.validate_core_weighting(structure, weighting, context=context)
    return _CoreWeightingRecord(weight_records, valid)


def _do_width(args: argparse.Namespace, context: context_.Context) -> _WidthRecord:
    structure = _load_structure(args.structure)

    if args.measure == "overlap":
        return _WidthRecord(args.measure, width.overlap(structure))

    relational_structure = structures.pos(structure)

    if args.measure == "tw":
        value, decomposition = width.treewidth(width.gaifman(relational_structure)
                                               , context=context)
    else:
        value, decomposition = width.twms(relational_structure, context=context)

    return _WidthRecord(args.measure, value, _make_decomposition_record(decomposition))


def _do_overlap(args: argparse.Namespace, context: context_.Context) -> _OverlapRecord:
    structure = _load_structure(args.structure)
    return _OverlapRecord(width.overlap(structure)
                          , _make_pair_record(structure, width.find_overlap_pair(structure)))


def _do_sa_tight(args: argparse.Namespace, context: context_.Context) -> _TightnessRecord:
    structure = _load_structure(args.structure)
    certificate = sherali.sa_tight_decide(structure, args.level, context=context)
    core_structure = certificate.core.core
    return _TightnessRecord(certificate.answer, core_structure.get_size(), certificate.twms
                            , certificate.overlap
                            , _make_decomposition_record(certificate.decomposition)
                            , _make_pair_record(core_structure, certificate.overlap_pair))


def _do_gap(args: argparse.Namespace, context: context_.Context) -> None:
    structure = _load_structure(args.structure)

    if args.kind == "treewidth":
        gadget = vcsp_recipes.gap_instance_treewidth(structure, args.level, context=context)
    else:
        gadget = vcsp_recipes.gap_instance_overlap(structure, args.level, context=context)

    _write_output(args.output, structures.serialize_structure(gadget.structure))


def _do_search(args: argparse.Namespace, context: context_.Context) -> _SearchRecord:
    structure1, structure2 = _load_structures(args.structure1, args.structure2)
    outcome = search.search_solve(structure1, structure2, level=args.level, context=context)
    return _SearchRecord(outcome.mapping.to_dict(), outcome.cost, outcome.infinite)


def _do_gen(args: argparse.Namespace, context: context_.Context) -> None:
    structure = _GEN_KIND_2_GENERATOR[args.kind](args)
    _write_output(args.output, structures.serialize_structure(structure))


def _do_validate_ifh(args: argparse.Namespace, context: context_.Context) -> _ValidationRecord:
    structure1, structure2 = _load_structures(args.structure1, args.structure2)
    witness_record = record.deserialize_record(_WitnessRecord, _load_json(args.witness))
    entries = []

    for weighted_mapping_record in witness_record.witness:
        weight = weighted_mapping_record.weight

        if weight.is_infinite():
            return _ValidationRecord(False, str(errors.NotADistributionError(
                "infinite weight: map={!r}".format(weighted_mapping_record.map))))

        mapping = mappings.Mapping.from_dict(structure1, structure2, weighted_mapping_record.map)
        entries.append((mapping, weight.to_fraction()))

    validation = improvement.validate_ifh(structure1, structure2
                                          , improvement.IfhDistribution(tuple(entries)))

    if validation.ok:
        return _ValidationRecord(True)

    return _ValidationRecord(False, str(validation.violation))


def _do_validate_decomp(args: argparse.Namespace, context: context_.Context
                        ) -> _DecompositionValidationRecord:
    structure = _load_structure(args.structure)
    data = _load_json(args.decomposition)

    if isinstance(data, dict) and "decomposition" in data.keys():
        data = data["decomposition"]

    decomposition_record = record.deserialize_record(_DecompositionRecord, data)
    decomposition = width.TreeDecomposition(tuple(frozenset(bag) for bag
                                                  in decomposition_record.bags)
                                            , decomposition_record.parents)
    relational_structure = structures.pos(structure)

    try:
        value, twms = width.validate_decomposition(width.gaifman(relational_structure)
                                                   , decomposition
                                                   , width.scopes(relational_structure))
    except errors.NotADecompositionError as error:
        return _DecompositionValidationRecord(False, reason=error.reason, node=error.node)

    return _DecompositionValidationRecord(True, value, twms)


def _do_core_width(args: argparse.Namespace, context: context_.Context) -> _CoreWidthRecord:
    structure = _load_structure(args.structure)
    answer, treewidth = core.core_treewidth_decide(structure, args.max_width, context=context)
    return _CoreWidthRecord(answer, treewidth)


def _make_witness(distribution: typing.Optional[improvement.IfhDistribution]
                  ) -> typing.Optional[typing.Tuple[_WeightedMappingRecord, ...]]:
    if distribution is None:
        return None

    return tuple(_WeightedMappingRecord(mapping.to_dict(), extrat.ExtRat.from_fraction(weight))
                 for mapping, weight in distribution.entries)


def _make_decomposition_record(decomposition: width.TreeDecomposition) -> _DecompositionRecord:
    return _DecompositionRecord(tuple(tuple(sorted(bag)) for bag in decomposition.bags)
                                , decomposition.parents)


def _make_pair_record(structure: structures.ValuedStructure
                      , pair: typing.Optional[typing.Tuple[width.OverlapTuple
                                                           , width.OverlapTuple]]
                      ) -> typing.Optional[typing.Tuple[_TupleRecord, ...]]:
    if pair is None:
        return None

    universe = structure.get_universe()
    return tuple(_TupleRecord(symbol_name, tuple(universe[arg] for arg in args))
                 for symbol_name, args in pair)


def _load_structures(file_name1: str, file_name2: str
                     ) -> typing.Tuple[structures.ValuedStructure, structures.ValuedStructure]:
    structure1 = _load_structure(file_name1)
    structure2 = _load_structure(file_name2)
    structures.check_same_signature(structure1, structure2)
    return structure1, structure2


def _load_structure(file_name: str) -> structures.ValuedStructure:
    return structures.parse_structure(_read_file(file_name))


def _load_json(file_name: str) -> typing.Any:
    try:
        return json.loads(_read_file(file_name))
    except ValueError as exception:
        raise errors.SchemaError("malformed json: file_name={!r} {}".format(file_name
                                                                            , exception)) from None


def _read_file(file_name: str) -> bytes:
    try:
        with open(file_name, "rb") as f:
            return f.read()
    except OSError as exception:
        raise errors.UnreadableInputError("unreadable file: file_name={!r} reason={!r}"
                                          .format(file_name, exception.strerror)) from None


def _write_file(file_name: str, data: bytes) -> None:
    try:
        with open(file_name, "wb") as f:
            f.write(data)
    except OSError as exception:
        raise errors.UnwritableOutputError("unwritable file: file_name={!r} reason={!r}"
                                           .format(file_name, exception.strerror)) from None


def _write_output(file_name: typing.Optional[str], data: bytes) -> None:
    if file_name is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        _write_file(file_name, data)


def _generate_diag(args: argparse.Namespace) -> structures.ValuedStructure:
    if args.m is None:
        raise errors.BadParameterError("missing --m: kind={!r}".format(args.kind))

    return vcsp_recipes.gen_diag_grid(args.n, args.m)


_GEN_KIND_2_GENERATOR: typing.Dict[str, typing.Callable[[argparse.Namespace]
                                                        , structures.ValuedStructure]] = {
    "grid": lambda args: vcsp_recipes.gen_grid(args.n),
    "path": lambda args: vcsp_recipes.gen_path(args.n),
    "diag": _generate_diag,
    "finite-diag": lambda args: vcsp_recipes.gen_finite_variants("diag", args.n, args.m)[0],
    "finite-grid": lambda args: vcsp_recipes.gen_finite_variants("grid-pair", args.n)[0],
    "finite-path": lambda args: vcsp_recipes.gen_finite_variants("grid-pair", args.n)[1],
    "clique": lambda args: vcsp_recipes.gen_crisp_clique(args.n),
    "two-triangles": lambda args: vcsp_recipes.gen_two_triangles(),
    "random": lambda args: vcsp_recipes.gen_random(args.seed, args.n),
}

_LIMIT_NAMES = "max_columns", "max_pivots", "max_maps"
