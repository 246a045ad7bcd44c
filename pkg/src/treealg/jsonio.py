"""JSON interchange formats.

Trees are sorted word lists (``[]`` is the empty tree)::

    {"alphabet": "abc", "tree": ["00b", "1a"]}
    {"images": {"a": ["0c", "1d"], "b": ["b"]}}                 endomorphism
    {"size": 2, "op": [0, 0, 0, 0], "zero": 0, "letters": [1, 1, 1]}   magma hom
    {"arity": 1, "body": ["0x1", "1c"]}                          polynomial
    {"alphabet": "abc", "arity": 1,
     "entries": [{"args": ["a"], "value": ["0a", "1c"]}, ...]}   function table

Structural problems raise ``MalformedInput``; semantic ones (bad words, partial
tables, ...) raise the matching ``TreeAlgebraError``.
"""

from __future__ import annotations

import jsonschema

from .cp import FunctionTable
from .errors import IncompleteTable, InvalidMagma
from .morphisms import Endomorphism, FiniteMagma, MagmaHom, extend_endo
from .polynomial import Polynomial
from .tree import Alphabet, Tree, check_over, from_word_set, to_words


class MalformedInput(ValueError):
    code = "MALFORMED_INPUT"


WORDS = {"type": "array", "items": {"type": "string"}}
ALPHABET = {"type": "string"}

TREE_SCHEMA = {
    "oneOf": [
        WORDS,
        {
            "type": "object",
            "properties": {"alphabet": ALPHABET, "tree": WORDS},
            "required": ["tree"],
        },
    ]
}

ENDO_SCHEMA = {
    "type": "object",
    "properties": {"alphabet": ALPHABET, "images": {"type": "object", "additionalProperties": WORDS}},
    "required": ["images"],
}

MAGMA_SCHEMA = {
    "type": "object",
    "properties": {
        "size": {"type": "integer", "minimum": 1},
        "op": {"type": "array", "items": {"type": "integer"}},
        "zero": {"type": "integer"},
        "letters": {"type": "array", "items": {"type": "integer"}},
    },
    "required": ["size", "op", "zero", "letters"],
}

POLY_SCHEMA = {
    "type": "object",
    "properties": {"arity": {"type": "integer", "minimum": 0}, "body": WORDS},
    "required": ["arity", "body"],
}

TABLE_SCHEMA = {
    "type": "object",
    "properties": {
        "alphabet": ALPHABET,
        "arity": {"type": "integer", "minimum": 0},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"args": {"type": "array", "items": {"type": "string"}}, "value": WORDS},
                "required": ["args", "value"],
            },
        },
    },
    "required": ["arity", "entries"],
}


def validate(obj, schema, what: str) -> None:
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path)
        raise MalformedInput(f"{what}: {e.message}" + (f" at {path}" if path else "")) from None


def alphabet_of(obj, default: Alphabet) -> Alphabet:
    if isinstance(obj, dict) and "alphabet" in obj:
        return Alphabet(obj["alphabet"])
    return default


def tree_from_json(obj, alphabet: Alphabet) -> Tree:
    validate(obj, TREE_SCHEMA, "tree")
    words = obj["tree"] if isinstance(obj, dict) else obj
    return from_word_set(words, alphabet)


def tree_to_json(t: Tree, alphabet: Alphabet) -> dict:
    return {"alphabet": alphabet.letters, "tree": to_words(t)}


def endo_from_json(obj, alphabet: Alphabet) -> Endomorphism:
    validate(obj, ENDO_SCHEMA, "endomorphism")
    images = {a: from_word_set(ws, alphabet) for a, ws in obj["images"].items()}
    return extend_endo(images, alphabet)


def endo_to_json(h: Endomorphism, alphabet: Alphabet) -> dict:
    return {"images": {a: to_words(h.image(a)) for a in alphabet}}


def magma_hom_from_json(obj, alphabet: Alphabet) -> MagmaHom:
    validate(obj, MAGMA_SCHEMA, "magma")
    magma = FiniteMagma.from_flat(obj["size"], obj["op"], obj["zero"])
    if len(obj["letters"]) != len(alphabet):
        raise InvalidMagma(f"need one letter image per letter of {alphabet}")
    return MagmaHom(magma, dict(zip(alphabet, obj["letters"])))


def magma_hom_to_json(h: MagmaHom, alphabet: Alphabet) -> dict:
    m = h.magma
    return {"size": m.size, "op": [v for row in m.op for v in row], "zero": m.zero,
            "letters": [h.letter_images[a] for a in alphabet]}


def poly_from_json(obj, alphabet: Alphabet) -> Polynomial:
    validate(obj, POLY_SCHEMA, "polynomial")
    return Polynomial.from_words(obj["arity"], obj["body"], alphabet)


def poly_to_json(p: Polynomial) -> dict:
    return p.to_json()


def table_from_json(obj, alphabet: Alphabet) -> FunctionTable:
    validate(obj, TABLE_SCHEMA, "table")
    alphabet = alphabet_of(obj, alphabet)
    n = obj["arity"]
    entries = {}
    for e in obj["entries"]:
        args = tuple(e["args"])
        if len(args) != n or any(a not in alphabet for a in args):
            raise IncompleteTable(f"entry args {list(args)} are not a letter vector of length {n}")
        if args in entries:
            raise IncompleteTable(f"duplicate entry for args {list(args)}")
        entries[args] = check_over(from_word_set(e["value"], alphabet), alphabet)
    return FunctionTable(alphabet, n, entries)


def table_to_json(g: FunctionTable) -> dict:
    return {"alphabet": g.alphabet.letters, "arity": g.arity,
            "entries": [{"args": list(u), "value": to_words(v)} for u, v in g.items()]}
