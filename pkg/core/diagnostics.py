"""
Layout Algebra - Oracle Diagnostics
Agreement ledger for checks of algebra results against the function-table oracle
"""

import logging
import threading
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


class CheckOutcome(Enum):
    """How an operator result compared with the oracle."""
    AGREED = "agreed"
    DISAGREED = "disagreed"
    REJECTED = "rejected"  # algebra refused a case the oracle accepts


@dataclass
class CheckRecord:
    """Single oracle comparison."""
    operation: str
    outcome: CheckOutcome
    inputs: str
    detail: Optional[str] = None
    timestamp: str = None

    def __post_init__(self):
        if self.timestamp is None:
            self.timestamp = datetime.now().isoformat()

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["outcome"] = self.outcome.value
        return data


@dataclass
class OperationTally:
    agreed: int = 0
    disagreed: int = 0
    rejected: int = 0

    @property
    def total(self) -> int:
        return self.agreed + self.disagreed + self.rejected


class OracleDiagnostics:
    """Keeps per-operator counts and the most recent disagreements.

    Safe to share between request threads; every update holds the lock.
    """

    def __init__(self, config: Dict[str, Any] = None):
        self.config = config or {}
        self.history_size = self.config.get("history_size", 256)
        self.tallies: Dict[str, OperationTally] = defaultdict(OperationTally)
        self.failures: List[CheckRecord] = []
        self._lock = threading.Lock()
        logger.debug("OracleDiagnostics initialized")

    def record(self, operation: str, outcome: CheckOutcome, inputs: str,
               detail: Optional[str] = None) -> CheckRecord:
        """Count one comparison; disagreements and rejections are also kept."""
        record = CheckRecord(operation=operation, outcome=outcome, inputs=inputs, detail=detail)
        with self._lock:
            tally = self.tallies[operation]
            if outcome is CheckOutcome.AGREED:
                tally.agreed += 1
            elif outcome is CheckOutcome.DISAGREED:
                tally.disagreed += 1
            else:
                tally.rejected += 1
            if outcome is not CheckOutcome.AGREED:
                self.failures.append(record)
                overflow = len(self.failures) - max(self.history_size, 0)
                if overflow > 0:
                    del self.failures[:overflow]
        if outcome is CheckOutcome.DISAGREED:
            logger.warning(f"{operation} disagrees with the oracle on {inputs}: {detail}")
        elif outcome is CheckOutcome.REJECTED:
            logger.debug(f"{operation} conservatively rejected {inputs}: {detail}")
        return record

    def rejection_rate(self, operation: str) -> float:
        """Fraction of oracle-valid cases the operator refused."""
        with self._lock:
            return self._rate(operation)

    def _rate(self, operation: str) -> float:
        tally = self.tallies.get(operation)
        if not tally or tally.total == 0:
            return 0.0
        return tally.rejected / tally.total

    def disagreements(self) -> List[CheckRecord]:
        with self._lock:
            return [r for r in self.failures if r.outcome is CheckOutcome.DISAGREED]

    def reset(self):
        with self._lock:
            self.tallies.clear()
            self.failures.clear()

    def summary(self) -> Dict[str, Any]:
        with self._lock:
            operations = {
                name: {
                    "agreed": tally.agreed,
                    "disagreed": tally.disagreed,
                    "rejected": tally.rejected,
                    "rejection_rate": self._rate(name),
                }
                for name, tally in sorted(self.tallies.items())
            }
            recent = [r.to_dict() for r in self.failures[-10:]]
        return {
            "operations": operations,
            "recent_failures": recent,
            "generated_at": datetime.now().isoformat(),
        }
