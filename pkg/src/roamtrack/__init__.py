"""Learn roaming behavior from wireless visit traces: rank visited
networks, pick the next handover target, estimate time-to-handover and
score the predictions by trace replay."""

__version__ = "0.1.0"

from .model import (AttractivenessMode, InvalidEventError, NetworkStats, Params,  # noqa: E402
                    RankState, TthState, VisitEvent, VisitKind, validate_event)
from .stats import NodeLedger, apply_rejection, apply_visit, compute_te  # noqa: E402
from .ranker import (RankTable, instant_rank, log_instant_rank, rank_all,  # noqa: E402
                     select_target, smooth_rank)
from .tth import Notification, build_notification, should_notify, update_tth  # noqa: E402
from .traceio import parse_trace, read_trace, write_report  # noqa: E402
from .evaluator import (EvaluationReport, PredictionRecord, categorize,  # noqa: E402
                        error_distribution, replay)
from .synth import Profile, generate  # noqa: E402
