from enum import Enum


class RuleVariant(Enum):
    A = 'a'
    B6A7 = 'b67'
    B6A8 = 'b68'

    @property
    def forbidden(self):
        # cycle lengths the variant's graphs must avoid
        return {
            RuleVariant.A: (4, 7, 8, 9),
            RuleVariant.B6A7: (4, 6, 7, 9),
            RuleVariant.B6A8: (4, 6, 8, 9),
        }[self]

    @property
    def uses_r4a(self) -> bool:
        return self is RuleVariant.A

    @classmethod
    def parse(cls, text: str) -> 'RuleVariant':
        key = str(text).strip().lower().replace('-', '').replace('_', '')
        for variant in cls:
            if key in (variant.value, variant.name.lower()):
                return variant
        raise ValueError(f"unknown rule variant: {text}")


class Richness(Enum):
    POOR = 2
    SEMI_RICH = 1
    RICH = 0
