from typing import Optional


class DPColorError(Exception):
    """Root of every error raised by pydpcolor."""


class MalformedInput(DPColorError):
    pass


class SelfLoop(MalformedInput):
    def __init__(self, vertex):
        super().__init__(f"self-loop at vertex {vertex}")
        self.vertex = vertex


class MalformedGraph6(MalformedInput):
    pass


class InvalidEmbedding(MalformedInput):
    pass


class InvalidPattern(MalformedInput):
    pass


class Disconnected(DPColorError):
    pass


class NotGenusZero(DPColorError):
    def __init__(self, euler: int):
        super().__init__(f"|V|-|E|+|F| = {euler}, expected 2")
        self.euler = euler


class NonPlanarOrTooLarge(DPColorError):
    pass


class NotOnFace(DPColorError):
    pass


class InvalidMatching(DPColorError):
    pass


class NonUniformLists(DPColorError):
    pass


class NotSpanningTree(DPColorError):
    pass


class BudgetExceeded(DPColorError):
    def __init__(self, cases: int, budget: int, unit: str = 'cases'):
        super().__init__(f"{cases} {unit} needed, budget is {budget}")
        self.cases = cases
        self.budget = budget
        self.unit = unit


class InvalidPartial(DPColorError):
    pass


class ConditionsViolated(DPColorError):
    def __init__(self, condition: int, index: Optional[int] = None, detail: str = ''):
        where = f" at position {index}" if index is not None else ''
        super().__init__(f"condition ({condition}) fails{where}{': ' + detail if detail else ''}")
        self.condition = condition
        self.index = index


class ChargeSumMismatch(DPColorError):
    pass


class ConservationViolated(DPColorError):
    pass


class NegativeTransfer(ConservationViolated):
    pass


class VariantPreconditionFailed(DPColorError):
    pass


class InvalidPathStats(DPColorError):
    pass
