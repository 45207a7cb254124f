__all__ = (
    "Bool",
    "Int",
    "String",
    "Rational",
    "Vector",
    "Map",
    "Optional",
    "serialize_record",
    "deserialize_record",
)


import typing

from . import errors
from . import extrat


_T = typing.TypeVar("_T")

Bool = bool
Int = int
String = str
Rational = extrat.ExtRat
Vector = typing.Tuple[_T, ...]
Map = typing.Dict[str, _T]
Optional = typing.Optional


def serialize_record(record) -> typing.Dict[str, typing.Any]:
    return _serialize_record(type(record), record)


def deserialize_record(record_class: typing.Type[_T], data: typing.Any, path: str="$") -> _T:
    return _deserialize_record(record_class, data, path)


def _serialize_record(record_class: typing.Type, record) -> typing.Dict[str, typing.Any]:
    data = {}

    for field_name, field_class in _get_field_classes(record_class).items():
        field_value = getattr(record, field_name)
        data[field_name] = _serialize_value(field_class, field_value)

    return data


def _deserialize_record(record_class: typing.Type, data: typing.Any, path: str):
    if not isinstance(data, dict):
        raise errors.SchemaError("object expected: path={!r}".format(path))

    field_classes = _get_field_classes(record_class)

    for field_name in data.keys():
        if field_name not in field_classes.keys():
            raise errors.SchemaError("unknown field: path={!r} field_name={!r}"
                                     .format(path, field_name))

    field_values = []

    for field_name, field_class in field_classes.items():
        field_path = "{}.{}".format(path, field_name)

        if field_name in data.keys():
            field_value = _deserialize_value(field_class, data[field_name], field_path)
        elif field_name in record_class._field_defaults.keys():
            field_value = record_class._field_defaults[field_name]
        else:
            raise errors.SchemaError("missing field: path={!r}".format(field_path))

        field_values.append(field_value)

    return record_class._make(field_values)


def _serialize_value(class_: typing.Any, value) -> typing.Any:
    serdes = _PRIMITIVE_CLASS_2_SERDES.get(class_, None)

    if serdes is not None:
        return serdes[0](value)

    origin = typing.get_origin(class_)

    if origin is typing.Union:
        if value is None:
            return None

        return _serialize_value(_get_optional_class(class_), value)

    if origin is tuple:
        element_class = typing.get_args(class_)[0]
        return [_serialize_value(element_class, element_value) for element_value in value]

    if origin is dict:
        element_class = typing.get_args(class_)[1]
        return {key: _serialize_value(element_class, element_value) for key, element_value
                in value.items()}

    return _serialize_record(class_, value)


def _deserialize_value(class_: typing.Any, data: typing.Any, path: str) -> typing.Any:
    serdes = _PRIMITIVE_CLASS_2_SERDES.get(class_, None)

    if serdes is not None:
        return serdes[1](data, path)

    origin = typing.get_origin(class_)

    if origin is typing.Union:
        if data is None:
            return None

        return _deserialize_value(_get_optional_class(class_), data, path)

    if origin is tuple:
        if not isinstance(data, list):
            raise errors.SchemaError("array expected: path={!r}".format(path))

        element_class = typing.get_args(class_)[0]
        return tuple(_deserialize_value(element_class, element_data, "{}[{}]".format(path, i))
                     for i, element_data in enumerate(data))

    if origin is dict:
        if not isinstance(data, dict):
            raise errors.SchemaError("object expected: path={!r}".format(path))

        element_class = typing.get_args(class_)[1]
        return {key: _deserialize_value(element_class, element_data, "{}.{}".format(path, key))
                for key, element_data in data.items()}

    return _deserialize_record(class_, data, path)


def _serialize_bool(bool_: Bool) -> typing.Any:
    return bool_


def _deserialize_bool(data: typing.Any, path: str) -> Bool:
    if not isinstance(data, bool):
        raise errors.SchemaError("boolean expected: path={!r}".format(path))

    return data


def _serialize_int(int_: Int) -> typing.Any:
    return int_


def _deserialize_int(data: typing.Any, path: str) -> Int:
    if isinstance(data, bool) or not isinstance(data, int):
        raise errors.SchemaError("integer expected: path={!r}".format(path))

    return data


def _serialize_string(string: String) -> typing.Any:
    return string


def _deserialize_string(data: typing.Any, path: str) -> String:
    if not isinstance(data, str):
        raise errors.SchemaError("string expected: path={!r}".format(path))

    return data


def _serialize_rational(rational: Rational) -> typing.Any:
    return extrat.format(rational)


def _deserialize_rational(data: typing.Any, path: str) -> Rational:
    if not isinstance(data, str):
        raise errors.SchemaError("rational text expected: path={!r}".format(path))

    return extrat.parse(data)


def _get_optional_class(class_: typing.Any) -> typing.Any:
    element_classes = [element_class for element_class in typing.get_args(class_)
                       if element_class is not type(None)]
    assert len(element_classes) == 1, repr(class_)
    return element_classes[0]


def _get_field_classes(record_class: typing.Type) -> typing.Dict[str, typing.Any]:
    field_classes = _RECORD_CLASS_2_FIELD_CLASSES.get(record_class, None)

    if field_classes is None:
        field_classes = typing.get_type_hints(record_class)
        field_classes = {field_name: field_classes[field_name] for field_name
                         in record_class._fields}
        _RECORD_CLASS_2_FIELD_CLASSES[record_class] = field_classes

    return field_classes


_PRIMITIVE_CLASS_2_SERDES: typing.Dict[typing.Any, typing.Tuple[typing.Callable
                                                                , typing.Callable]] = {
    Bool: (_serialize_bool, _deserialize_bool),
    Int: (_serialize_int, _deserialize_int),
    String: (_serialize_string, _deserialize_string),
    Rational: (_serialize_rational, _deserialize_rational),
}

_RECORD_CLASS_2_FIELD_CLASSES: typing.Dict[typing.Type, typing.Dict[str, typing.Any]] = {}
