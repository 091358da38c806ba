from enum import Enum

class Connectivity(str, Enum):
    STRONGLY_CONNECTED = "strongly_connected"
    WEAKLY_CONNECTED = "weakly_connected"
    DISCONNECTED = "disconnected"

class ModelMode(str, Enum):
    LOCAL = "local"
    GLOBAL = "global"
    NONMORALIZING = "nonmoralizing"

class HamiltonianChoice(str, Enum):
    UNDERLYING_ADJACENCY = "underlying_adjacency"
    CUSTOM = "custom"
    ZERO = "zero"

class Verdict(str, Enum):
    RELAXING = "relaxing"
    CONVERGENT_NOT_RELAXING = "convergent_not_relaxing"
    NON_CONVERGENT = "non_convergent"

class SurveyFilter(str, Enum):
    """Connectivity filter applied while sampling survey graphs."""
    WEAKLY_CONNECTED = "weakly_connected"
    STRONGLY_CONNECTED = "strongly_connected"
    ONE_SINK = "one_sink"
    MULTI_SINK = "multi_sink"
    NONE = "none"

class ExperimentKind(str, Enum):
    THRESHOLD_SCAN = "threshold_scan"
    ER_SURVEY = "er_survey"
    PERIODICITY = "periodicity"
    OBSERVANCE = "observance"
    OMEGA_0_HISTOGRAM = "omega_0_histogram"

class PeriodicityCase(str, Enum):
    CIRCULANT = "circulant"
    NONMORALIZING_FIG6 = "nonmoralizing_fig6"

class ParentRow(str, Enum):
    """Row that spreads a parent's whole subspace onto one child direction."""
    ONES = "ones"
    NORMALIZED = "normalized"
