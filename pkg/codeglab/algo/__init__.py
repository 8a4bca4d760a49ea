from .permutation import Permutation
from .perm_group import PermGroup, quotient
from .conjugacy import ClassData, conjugacy_classes
from .character_table import CharacterTable, dixon_schneider, relative_degrees
from .recognition import NamedGroupRecognizer, named_group, recognize_named
from .constructors import available_constructors, build_builtin, group_constructor
from .pgr import parse_group_file, parse_group_text, serialize_group
from .classifier import (
    ClassificationReport,
    corollary_c_classify,
    cross_check,
    has_abelian_ti_sylow,
    hereditary_checks,
    is_hp_direct,
    is_hp_star_direct,
    theorem_a_classify,
    theorem_case,
)
from .corpus import CorpusEntry, CorpusManifest, CorpusRepository, PrimeExpectation, load_manifest
from .errors import (
    BiconditionalViolation,
    CodeglabError,
    EnumerationCapExceeded,
    GroupDataError,
    InvariantViolation,
    PreconditionError,
)

__all__ = [
    "Permutation",
    "PermGroup",
    "quotient",
    "ClassData",
    "conjugacy_classes",
    "CharacterTable",
    "dixon_schneider",
    "relative_degrees",
    "NamedGroupRecognizer",
    "named_group",
    "recognize_named",
    "available_constructors",
    "build_builtin",
    "group_constructor",
    "parse_group_file",
    "parse_group_text",
    "serialize_group",
    "ClassificationReport",
    "corollary_c_classify",
    "cross_check",
    "has_abelian_ti_sylow",
    "hereditary_checks",
    "is_hp_direct",
    "is_hp_star_direct",
    "theorem_a_classify",
    "theorem_case",
    "CorpusEntry",
    "CorpusManifest",
    "CorpusRepository",
    "PrimeExpectation",
    "load_manifest",
    "BiconditionalViolation",
    "CodeglabError",
    "EnumerationCapExceeded",
    "GroupDataError",
    "InvariantViolation",
    "PreconditionError",
]
