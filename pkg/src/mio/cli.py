"""Headless command-line driver for every engine feature."""

import json
import sys
from pathlib import Path

import click

from . import analytics, codec, decoder, timing, trainer
from .analytics import AttemptLog
from .errors import MioError
from .settings import Settings, load_settings, merge_settings
from .timing import TimingConfig
from .trainer import ActivityKind

_ACTIVITY_NAMES = {
    "words": ActivityKind.WORDS_PRACTICE,
    "abc": ActivityKind.ABC_PRACTICE,
    "exercise": ActivityKind.EXERCISE,
    "playback": ActivityKind.PLAYBACK,
}


def _config(unit_ms: int) -> TimingConfig:
    return TimingConfig(unit_ms=unit_ms)


@click.group()
def main():
    """Vibrotactile Morse engine: timelines, trace decoding, practice, analytics."""


@main.command()
@click.argument("text")
@click.option("--unit-ms", default=200, show_default=True, help="Length of one dot.")
def encode(text, unit_ms):
    """Print TEXT as dots/dashes plus its vibration timeline."""
    tokens = codec.encode_text(text)
    notation = " ".join(
        codec.notation(tok.code) if tok.code else ("/" if tok.char == " " else "//")
        for tok in tokens
    )
    tl = timing.compile_text(text, _config(unit_ms))
    click.echo(notation)
    click.echo(json.dumps(tl.to_json()))


@main.command()
@click.argument("text")
@click.option("--unit-ms", default=200, show_default=True)
def timeline(text, unit_ms):
    """Print the JSON vibration timeline for TEXT."""
    tl = timing.compile_text(text, _config(unit_ms))
    click.echo(json.dumps(tl.to_json()))


@main.command("decode-trace")
@click.argument("trace_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--unit-ms", default=200, show_default=True)
@click.option("--effects", is_flag=True, help="Also print the per-event effect trace.")
def decode_trace(trace_file, unit_ms, effects):
    """Decode a JSON-lines key-event trace into committed text."""
    events = decoder.read_trace(trace_file)
    text, effect_list = decoder.decode_stream(events, _config(unit_ms))
    click.echo(text)
    if effects:
        for effect in effect_list:
            click.echo(json.dumps(effect.to_json()), err=True)


@main.command("practice-replay")
@click.option("--activity", type=click.Choice(sorted(_ACTIVITY_NAMES)), required=True)
@click.option("--trace", "trace_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--log", "log_file", type=click.Path(dir_okay=False), default="attempts.jsonl",
              show_default=True, help="Attempt log to append records to.")
@click.option("--unit-ms", default=200, show_default=True)
@click.option("--seed", type=int, default=None, help="Words Practice sampling seed.")
@click.option("--word-list", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--word-count", type=int, default=trainer.DEFAULT_WORD_COUNT, show_default=True)
@click.option("--session-id", default=None)
@click.option("--no-suffix", is_flag=True, help="Play full prompts instead of suffixes.")
def practice_replay(activity, trace_file, log_file, unit_ms, seed, word_list, word_count,
                    session_id, no_suffix):
    """Run a practice session headlessly from a trace, writing attempt records."""
    curriculum = trainer.load_word_list(word_list) if word_list else None
    session, _ = trainer.enter_activity(
        _ACTIVITY_NAMES[activity],
        _config(unit_ms),
        curriculum=curriculum,
        word_count=word_count,
        seed=seed,
        suffix_mode=not no_suffix,
        session_id=session_id,
    )
    log = AttemptLog(log_file)
    events = decoder.read_trace(trace_file)
    written = 0
    last_t = 0
    for ev in events:
        result = session.submit_event(ev)
        last_t = max(last_t, ev.t)
        if result.record is not None:
            log.append(result.record)
            written += 1
            status = "ok" if result.record.success else "failed"
            click.echo(f"prompt {result.record.prompt_index} {result.record.prompt!r}: {status} "
                       f"({analytics.time_to_enter(result.record):.1f}s)")
    if not session.completed:
        record = session.abandon(last_t)
        if record is not None:
            log.append(record)
            written += 1
            click.echo(f"prompt {record.prompt_index} {record.prompt!r}: abandoned")
    click.echo(f"{written} attempt record(s) appended to {log_file}")


@main.command()
@click.argument("log_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Also write the per-attempt scatter data as CSV.")
@click.option("--unit-ms", default=200, show_default=True)
def analyze(log_file, csv_path, unit_ms):
    """Summarize an attempt log: learning curve, throughput, scatter CSV."""
    records, malformed = AttemptLog(log_file).read()
    for bad in malformed:
        click.echo(f"warning: {bad}", err=True)
    successes = [r for r in records if r.success]
    click.echo(f"records: {len(records)} ({len(successes)} successful)")
    try:
        fit = analytics.learning_curve(records)
        click.echo(f"learning curve: slope {fit.slope:+.3f} s/prompt, "
                   f"intercept {fit.intercept:.3f} s, r^2 {fit.r_squared:.3f}, "
                   f"p {fit.p_value:.2e}, n {fit.n}")
    except MioError as exc:
        click.echo(f"learning curve: not available ({exc})")
    sample = analytics.frequency_weighted_text()
    cpm = analytics.throughput_cpm(sample, _config(unit_ms))
    click.echo(f"throughput: {cpm:.1f} cpm at {unit_ms} ms/unit "
               "(letter-frequency weighted, inter-letter gap amortized)")
    csv_text = analytics.attempt_times_csv(records)
    if csv_path:
        Path(csv_path).write_text(csv_text, encoding="utf-8")
        click.echo(f"wrote {csv_path}")
    else:
        click.echo(csv_text, nl=False)


@main.command()
@click.argument("answers")
def sus(answers):
    """Score a 10-item SUS response given as comma-separated 1..5 values."""
    try:
        items = [int(part.strip()) for part in answers.split(",")]
    except ValueError:
        raise click.UsageError("answers must be 10 comma-separated integers")
    click.echo(f"{analytics.sus_score(items)}")


@main.command("export-table")
@click.argument("path", type=click.Path(dir_okay=False), required=False)
def export_table(path):
    """Write the character table as tab-separated text (stdout by default)."""
    text = codec.table_export_text()
    if path:
        Path(path).write_text(text, encoding="utf-8")
        click.echo(f"wrote {path}")
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True, envvar="MIO_HOST")
@click.option("--port", default=8000, show_default=True, envvar="MIO_PORT", type=int)
@click.option("--data-dir", default="mio-data", show_default=True, envvar="MIO_DATA_DIR")
@click.option("--settings", "settings_file", type=click.Path(exists=True, dir_okay=False),
              default=None, help="JSON settings file.")
@click.option("--unit-ms", type=int, default=None, help="Override the configured unit length.")
def serve(host, port, data_dir, settings_file, unit_ms):
    """Run the HTTP/WebSocket service."""
    import uvicorn

    from .service import create_app

    base = load_settings(settings_file) if settings_file else Settings()
    app = create_app(data_dir, merge_settings(base, unit_ms=unit_ms))
    uvicorn.run(app, host=host, port=port)


def run():  # pragma: no cover
    try:
        main(standalone_mode=True)
    except MioError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":  # pragma: no cover
    run()
