# Standard
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple


@dataclass
class Instance:
    """One independent work item of a batch: the arguments of a single solver call and its outcome

    `idx` is the item's position in the batch (an ant of an iteration, a seed of an experiment);
    `result` stays None until the batch has run.
    """

    args: Tuple[Any, ...] = ()
    kwargs: Dict[str, Any] = field(default_factory=dict)
    idx: Optional[int] = None
    result: Optional[Any] = None

    def run(self, fn: Callable[..., Any]) -> Any:
        return fn(*self.args, **self.kwargs)
