import json
import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import practice_trace, segs
from mio import timing, trainer
from mio.decoder import Key, KeyEvent
from mio.errors import EmptyList, InvalidPrompt, MioError
from mio.timing import TimingConfig
from mio.trainer import (
    ActivityKind,
    Curriculum,
    CurriculumSource,
    SubmitOutcome,
    enter_activity,
)

D, A, SQ, TAP = Key.DOT, Key.DASH, Key.SQUARE, Key.TAP_PROMPT


def run_events(session, keys, start_t=0):
    results = []
    for i, key in enumerate(keys):
        results.append(session.submit_event(KeyEvent(key, start_t + i)))
    return results


class TestActivities:
    def test_entry_cue_counts(self):
        expected = {
            ActivityKind.WORDS_PRACTICE: 1,
            ActivityKind.EXERCISE: 2,
            ActivityKind.ABC_PRACTICE: 3,
            ActivityKind.PLAYBACK: 4,
        }
        for kind, count in expected.items():
            assert kind.entry_cue_count == count
            _, cue = enter_activity(kind, seed=1)
            assert cue.on_count == count
            assert all(seg.ms == 100 for seg in cue.segments if seg.on)

    def test_abc_prompts_are_the_alphabet(self):
        session, _ = enter_activity(ActivityKind.ABC_PRACTICE)
        assert session.curriculum.prompts == tuple(string.ascii_uppercase)
        assert session.prompt == "A"

    def test_exercise_starts_with_single_letters_and_ends_with_the_sentence(self):
        session, _ = enter_activity(ActivityKind.EXERCISE)
        prompts = session.curriculum.prompts
        assert len(prompts[0]) == 1
        assert prompts[-1] == "THE CAT EATS THE CAKE"
        assert "THE CAT EATS" in prompts

    def test_words_practice_samples_bundled_list(self):
        words = set(trainer.basic_english_words())
        assert len(words) >= 200
        session, _ = enter_activity(ActivityKind.WORDS_PRACTICE, seed=7)
        assert all(prompt in words for prompt in session.curriculum.prompts)

    def test_words_sampling_is_seed_reproducible(self):
        first, _ = enter_activity(ActivityKind.WORDS_PRACTICE, seed=42)
        second, _ = enter_activity(ActivityKind.WORDS_PRACTICE, seed=42)
        third, _ = enter_activity(ActivityKind.WORDS_PRACTICE, seed=43)
        assert first.curriculum.prompts == second.curriculum.prompts
        assert first.curriculum.prompts != third.curriculum.prompts

    def test_main_screen_cue_spells_mio(self):
        assert trainer.main_screen_cue() == timing.compile_text("MIO")


class TestCurriculum:
    def test_rejects_empty(self):
        with pytest.raises(EmptyList):
            Curriculum(())

    def test_rejects_bad_alphabet(self):
        with pytest.raises(Exception):
            Curriculum(("CAFÉ",))

    def test_export_json(self):
        cur = Curriculum(("TEA", "CAT"))
        assert json.loads(cur.to_json()) == ["TEA", "CAT"]

    def test_load_word_list(self, tmp_path):
        path = tmp_path / "words.txt"
        path.write_text("TEA\nCAT\n", encoding="utf-8")
        cur = trainer.load_word_list(path)
        assert cur.prompts == ("TEA", "CAT")
        assert cur.source is CurriculumSource.WORD_LIST

    def test_load_word_list_skips_blanks_and_folds_case(self, tmp_path):
        path = tmp_path / "words.txt"
        path.write_text("tea\n\n  \ncat\n", encoding="utf-8")
        assert trainer.load_word_list(path).prompts == ("TEA", "CAT")

    def test_load_word_list_reports_bad_line(self, tmp_path):
        path = tmp_path / "words.txt"
        path.write_text("CAFÉ\n", encoding="utf-8")
        with pytest.raises(InvalidPrompt) as exc_info:
            trainer.load_word_list(path)
        assert exc_info.value.line_number == 1

    def test_load_word_list_empty_file(self, tmp_path):
        path = tmp_path / "words.txt"
        path.write_text("\n\n", encoding="utf-8")
        with pytest.raises(EmptyList):
            trainer.load_word_list(path)


class TestSubmit:
    def session(self, *prompts, suffix=True):
        session, _ = enter_activity(ActivityKind.EXERCISE)
        session.curriculum = Curriculum(prompts)
        session.suffix_mode = suffix
        return session

    def test_correct_letter_completes_prompt(self):
        session = self.session("A", "B")
        results = run_events(session, [D, A, SQ])
        assert results[-1].outcome is SubmitOutcome.PROMPT_COMPLETE
        assert session.prompt == "B"

    def test_wrong_letter_resets_with_1200ms_cue(self):
        session = self.session("A")
        results = run_events(session, [A, SQ])
        assert results[-1].outcome is SubmitOutcome.WRONG_RESET
        assert segs(results[-1].cue) == [(True, 1200)]
        assert session.committed == ""

    def test_valid_prefix_continues(self):
        session = self.session("TEA")
        results = run_events(session, [A, SQ, D, SQ])  # T, E committed
        assert all(r.outcome is SubmitOutcome.CONTINUE for r in results)
        assert session.committed == "TE"

    def test_undecodable_commit_maps_to_wrong_reset(self):
        session = self.session("A")
        results = run_events(session, [D, A, D, A, D, A, SQ])
        assert results[-1].outcome is SubmitOutcome.WRONG_RESET
        assert session.committed == ""
        assert session.reset_count_current == 1

    def test_wrong_reset_clears_whole_input(self):
        session = self.session("TEA")
        run_events(session, [A, SQ])  # T committed
        results = run_events(session, [A, SQ], start_t=10)  # TT: not a prefix
        assert results[-1].outcome is SubmitOutcome.WRONG_RESET
        assert session.committed == ""

    def test_swipe_reset_is_not_a_wrong_reset(self):
        session = self.session("TEA")
        results = run_events(session, [D, Key.SWIPE_RESET])
        assert results[-1].outcome is SubmitOutcome.CONTINUE
        assert session.reset_count_current == 0

    def test_last_prompt_completes_session(self):
        session = self.session("E")
        results = run_events(session, [D, SQ])
        assert results[-1].outcome is SubmitOutcome.SESSION_COMPLETE
        assert session.completed

    def test_events_after_completion_are_inert(self):
        session = self.session("E")
        run_events(session, [D, SQ])
        result = session.submit_event(KeyEvent(D, 99))
        assert result.outcome is SubmitOutcome.SESSION_COMPLETE
        assert result.record is None

    def test_exercise_terminates_at_the_sentence(self):
        session, _ = enter_activity(ActivityKind.EXERCISE)
        t = 0
        outcome = None
        for prompt in session.curriculum.prompts:
            for ev in practice_trace(prompt, start_ms=t):
                outcome = session.submit_event(ev).outcome
                t = ev.t
        assert outcome is SubmitOutcome.SESSION_COMPLETE
        assert session.completed

    @given(st.lists(st.sampled_from([D, A, SQ, Key.SWIPE_RESET, TAP]), max_size=40))
    @settings(max_examples=200)
    def test_committed_is_always_a_prefix(self, keys):
        session, _ = enter_activity(ActivityKind.EXERCISE)
        session.curriculum = Curriculum(("TEA",))
        for i, key in enumerate(keys):
            session.submit_event(KeyEvent(key, i))
            if not session.completed:
                assert session.prompt.startswith(session.committed)

    def test_prompt_complete_fires_exactly_once_per_prompt(self):
        session = self.session("E", "T")
        completions = [
            r.outcome
            for r in run_events(session, [D, SQ, A, SQ], start_t=0)
            if r.outcome in (SubmitOutcome.PROMPT_COMPLETE, SubmitOutcome.SESSION_COMPLETE)
        ]
        assert completions == [SubmitOutcome.PROMPT_COMPLETE, SubmitOutcome.SESSION_COMPLETE]


class TestRecords:
    def test_record_written_on_completion(self):
        session, _ = enter_activity(ActivityKind.EXERCISE, session_id="s1")
        session.curriculum = Curriculum(("E",))
        trace = practice_trace("E")
        record = [session.submit_event(ev) for ev in trace][-1].record
        assert record is not None
        assert record.session_id == "s1"
        assert record.prompt == "E"
        assert record.prompt_index == 1
        assert record.success is True
        # dot feedback 200 ms + square feedback 100 ms
        assert record.ended_at_ms - record.started_at_ms == 300

    def test_record_counts_playbacks_and_resets(self):
        session, _ = enter_activity(ActivityKind.EXERCISE)
        session.curriculum = Curriculum(("E",))
        run_events(session, [TAP, TAP, A, SQ])  # two listens, one wrong commit
        record = run_events(session, [D, SQ], start_t=10)[-1].record
        assert record.playback_count == 2
        assert record.reset_count == 1

    def test_counters_reset_on_advance(self):
        session, _ = enter_activity(ActivityKind.EXERCISE)
        session.curriculum = Curriculum(("E", "T"))
        run_events(session, [TAP, D, SQ])
        record = run_events(session, [A, SQ], start_t=10)[-1].record
        assert record.prompt == "T"
        assert record.playback_count == 0
        assert record.reset_count == 0

    def test_abandon_writes_failed_record(self):
        session, _ = enter_activity(ActivityKind.EXERCISE)
        session.curriculum = Curriculum(("TEA",))
        run_events(session, [A, SQ])
        record = session.abandon(ended_at_ms=5000)
        assert record.success is False
        assert record.prompt == "TEA"

    def test_abandon_after_completion_returns_nothing(self):
        session, _ = enter_activity(ActivityKind.EXERCISE)
        session.curriculum = Curriculum(("E",))
        run_events(session, [D, SQ])
        assert session.abandon(ended_at_ms=10) is None


class TestPlayPrompt:
    def test_full_playback_with_empty_input(self):
        session, _ = enter_activity(ActivityKind.EXERCISE)
        session.curriculum = Curriculum(("TEA",))
        assert session.play_prompt() == timing.compile_text("TEA")
        assert session.playback_count_current == 1

    def test_suffix_strips_committed_prefix(self):
        session, _ = enter_activity(ActivityKind.EXERCISE, suffix_mode=True)
        session.curriculum = Curriculum(("TEA",))
        run_events(session, [A, SQ])  # T committed
        assert session.play_prompt() == timing.compile_text("EA")

    def test_suffix_off_plays_full_prompt(self):
        session, _ = enter_activity(ActivityKind.EXERCISE, suffix_mode=False)
        session.curriculum = Curriculum(("TEA",))
        run_events(session, [A, SQ])
        assert session.play_prompt() == timing.compile_text("TEA")

    def test_suffix_with_empty_committed_equals_full(self):
        on = enter_activity(ActivityKind.EXERCISE, suffix_mode=True)[0]
        off = enter_activity(ActivityKind.EXERCISE, suffix_mode=False)[0]
        assert on.play_prompt() == off.play_prompt()

    def test_tap_prompt_event_returns_suffix_timeline(self):
        session, _ = enter_activity(ActivityKind.EXERCISE, suffix_mode=True)
        session.curriculum = Curriculum(("TEA",))
        run_events(session, [A, SQ])
        result = session.submit_event(KeyEvent(TAP, 10))
        assert result.outcome is SubmitOutcome.CONTINUE
        assert result.cue == timing.compile_text("EA")


class TestPlayback:
    def test_advance_wraps(self):
        session, _ = enter_activity(ActivityKind.PLAYBACK)
        assert session.prompt == "A"
        assert session.playback_advance() == timing.compile_text("B")
        assert session.prompt == "B"
        session.index = 25
        session.playback_advance()
        assert session.prompt == "A"

    def test_custom_text(self):
        cur = Curriculum(("THE SUN", "IS UP"))
        session, _ = enter_activity(ActivityKind.PLAYBACK, curriculum=cur)
        assert session.playback_advance() == timing.compile_text("IS UP")

    def test_tap_advances_and_plays(self):
        session, _ = enter_activity(ActivityKind.PLAYBACK)
        result = session.submit_event(KeyEvent(TAP, 0))
        assert result.cue == timing.compile_text("B")
        assert session.prompt == "B"

    def test_typing_keys_only_give_feedback(self):
        session, _ = enter_activity(ActivityKind.PLAYBACK)
        result = session.submit_event(KeyEvent(D, 0))
        assert result.outcome is SubmitOutcome.CONTINUE
        assert result.cue.total_ms == 200
        assert session.committed == ""

    def test_advance_requires_playback_activity(self):
        session, _ = enter_activity(ActivityKind.ABC_PRACTICE)
        with pytest.raises(MioError):
            session.playback_advance()

    def test_custom_unit_scales_prompt_timelines(self):
        cfg = TimingConfig(unit_ms=100)
        session, _ = enter_activity(ActivityKind.PLAYBACK, cfg)
        assert session.playback_advance() == timing.compile_text("B", cfg)
