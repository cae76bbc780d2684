"""Terminal game: a human plays Builder against the matching Painter."""

from __future__ import annotations

import json
import sys
from typing import IO

from onlineramsey.bounds import lower_bound_applies, theorem3_lower
from onlineramsey.game import GameConfig, GameError, builder_won
from onlineramsey.painter import MatchingPainter, survival_horizon

QUIT_WORDS = {"quit", "exit", "q"}


def play_interactive(
    config: GameConfig,
    stdin: IO[str] | None = None,
    stdout: IO[str] | None = None,
    trace: IO[str] | None = None,
) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    painter = MatchingPainter(config)
    lower = theorem3_lower(config.targets, config.n)
    horizon = survival_horizon(config)

    def say(msg: str) -> None:
        print(msg, file=stdout, flush=True)

    say(f"Builder vs Painter on K_{config.n}, targets {config.targets}. Enter edges as 'u v', or 'quit'.")
    say(f"Painter survives at least {max(horizon, 0)} moves; lower bound on the game value is {lower}.")
    while not painter.state.is_full():
        stdout.write("builder> ")
        stdout.flush()
        line = stdin.readline()
        if not line or line.strip().lower() in QUIT_WORDS:
            say("bye")
            return 0
        try:
            u, v = (int(x) for x in line.replace(",", " ").split())
            move = painter.respond((u, v))
        except (ValueError, GameError) as exc:
            say(f"rejected: {exc if isinstance(exc, GameError) else 'expected two vertex numbers'}")
            continue
        led = painter.ledger
        say(
            f"move {led.j}: edge {move.edge} -> colour {move.color} (rule {move.rule}); "
            f"A={led.A} B={led.B} C2={led.C2} C3={led.C3} typeIII={painter.type3}"
        )
        if trace is not None:
            trace.write(json.dumps(painter.trace_record(move)) + "\n")
        winner = builder_won(painter.state, config)
        if winner is not None:
            k = led.j
            say(f"Builder wins in colour {winner} after {k} moves.")
            if lower_bound_applies(config):
                verdict = "consistent with" if k >= lower else "BELOW"
                say(f"{verdict} the lower bound {lower} (survival horizon {horizon}).")
            return 0
    say("Board full: Painter survived.")
    return 0
