import typing


class Error(Exception):
    CODE: typing.ClassVar[int] = 0


class InputError(Error):
    pass


class ResourceError(Error):
    pass


class PreconditionError(Error):
    pass


_ERROR_CODE_2_ERROR_CLASS: typing.Dict[int, typing.Type[Error]] = {}

_E = typing.TypeVar("_E", bound=typing.Type[Error])


def _register_error(error_code: int) -> typing.Callable[[_E], _E]:
    def do(error_class: _E) -> _E:
        assert issubclass(error_class, Error), repr(error_class)
        assert error_code not in _ERROR_CODE_2_ERROR_CLASS.keys(), repr(error_code)
        error_class.CODE = error_code
        _ERROR_CODE_2_ERROR_CLASS[error_code] = error_class
        return error_class

    return do


@_register_error(101)
class MalformedRationalError(InputError):
    pass


@_register_error(102)
class ZeroDenominatorError(InputError):
    pass


@_register_error(103)
class SchemaError(InputError):
    pass


@_register_error(104)
class ArityMismatchError(InputError):
    pass


@_register_error(105)
class UnknownElementError(InputError):
    pass


@_register_error(106)
class SignatureMismatchError(InputError):
    pass


@_register_error(107)
class BadParameterError(InputError):
    pass


@_register_error(108)
class NotADecompositionError(InputError):
    def __init__(self, reason: str, node: typing.Optional[int]=None) -> None:
        super().__init__("not a decomposition: reason={!r} node={!r}".format(reason, node))
        self.reason = reason
        self.node = node


@_register_error(109)
class NotADistributionError(InputError):
    pass


@_register_error(110)
class ConstraintViolationError(InputError):
    def __init__(self, symbol: str, args: typing.Tuple[str, ...], lhs: object
                 , rhs: object) -> None:
        super().__init__("violated constraint: symbol={!r} args={!r} lhs={!s} rhs={!s}"
                         .format(symbol, args, lhs, rhs))
        self.symbol = symbol
        self.args = args


@_register_error(111)
class UnreadableInputError(InputError):
    pass


@_register_error(112)
class UnwritableOutputError(InputError):
    pass


@_register_error(201)
class ResourceLimitError(ResourceError):
    pass


@_register_error(301)
class PreconditionFailedError(PreconditionError):
    pass


@_register_error(302)
class NotACoreError(PreconditionError):
    pass


@_register_error(303)
class NoTighteningWitnessError(PreconditionError):
    pass


def get_error_class(error_code: int) -> typing.Type[Error]:
    return _ERROR_CODE_2_ERROR_CLASS[error_code]


def get_exit_status(error: Error) -> int:
    if isinstance(error, InputError):
        return _EXIT_STATUS_INPUT
    elif isinstance(error, ResourceError):
        return _EXIT_STATUS_RESOURCE
    elif isinstance(error, PreconditionError):
        return _EXIT_STATUS_PRECONDITION
    else:
        return 1


_EXIT_STATUS_INPUT = 2
_EXIT_STATUS_RESOURCE = 3
_EXIT_STATUS_PRECONDITION = 4
