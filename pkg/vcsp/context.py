import logging
import typing

from . import errors


class Limits(typing.NamedTuple):
    max_columns: int = 200_000
    max_pivots: int = 1_000_000
    max_maps: int = 10_000_000
    max_sa_variables: int = 2_000_000
    max_treewidth_vertices: int = 16
    max_twms_vertices: int = 12
    max_gadget_pairs: int = 8
    max_gadget_elements: int = 4096


class Context:
    _logger = logging.getLogger()

    def __init__(self, *, logger: typing.Optional[logging.Logger]=None, **limits: int) -> None:
        if logger is not None and logger is not self._logger:
            self._logger = logger

        for limit_name, limit in limits.items():
            if limit_name not in Limits._fields:
                raise TypeError("unknown limit: limit_name={!r}".format(limit_name))

            if limit < 0:
                raise errors.BadParameterError("negative limit: limit_name={!r} limit={!r}"
                                               .format(limit_name, limit))

        self._limits = Limits(**limits)

    def get_limits(self) -> Limits:
        return self._limits

    def get_logger(self) -> logging.Logger:
        return self._logger

    def check_limit(self, limit_name: str, value: int) -> None:
        limit = getattr(self._limits, limit_name)

        if value > limit:
            raise errors.ResourceLimitError("limit exceeded: limit_name={!r} limit={!r} value={!r}"
                                            .format(limit_name, limit, value))


def get_context(context: typing.Optional[Context]) -> Context:
    if context is None:
        return _DEFAULT_CONTEXT

    return context


_DEFAULT_CONTEXT = Context()
