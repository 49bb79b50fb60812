import json
import statistics

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ucds.analysis import (
    Dataset,
    Participant,
    build_report,
    cctld_presence,
    domain_frequency,
    domain_repeat_median,
    load_dataset,
    median,
    median_of_medians,
    members_distribution,
    pct_url_messages,
    render_json,
    render_text,
    tld_frequency,
    top_sharer_share,
)
from ucds.errors import EmptyInput, NoUrls, PayloadError
from ucds.payload import payload_bytes

from helpers import build_chat


def dataset_of(*participants: tuple[str, list]) -> Dataset:
    return Dataset(
        participants=[Participant(pid, chats) for pid, chats in participants]
    )


def chat_with_share(label: str, url_count: int, text_count: int, sharer: int = 0):
    messages = [("2021-01-01", sharer, "url")] * url_count
    messages += [("2021-01-02", 0, "text")] * text_count
    urls = [(i, "example.com", None, False) for i in range(url_count)]
    return build_chat(label, messages, urls)


class TestMedian:
    def test_singleton(self):
        assert median([5]) == 5

    def test_even_mean_of_middles(self):
        assert median([1, 2, 3, 4]) == 2.5

    def test_paper_participant_chat_counts(self):
        assert median([3, 5, 5, 5, 3, 4, 1, 3, 4, 3]) == 3.5

    def test_empty(self):
        with pytest.raises(EmptyInput):
            median([])

    @given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=60))
    def test_matches_stdlib(self, values):
        assert median(values) == statistics.median(values)


class TestMedianOfMedians:
    def test_degenerate_single_chat(self):
        chat = chat_with_share("A", 1, 3)
        dataset = dataset_of(("p1", [chat]))
        assert median_of_medians(dataset, pct_url_messages) == 25.0

    def test_two_participants(self):
        a = [
            chat_with_share("A", 1, 9),   # 10%
            chat_with_share("B", 2, 8),   # 20%
            chat_with_share("C", 3, 7),   # 30%
        ]
        b = [
            chat_with_share("A", 0, 5),   # 0%
            chat_with_share("B", 10, 0),  # 100%
        ]
        dataset = dataset_of(("p1", a), ("p2", b))
        assert median_of_medians(dataset, pct_url_messages) == 35.0

    def test_none_metric_excludes_chat(self):
        dataset = dataset_of(
            ("p1", [chat_with_share("A", 0, 4), chat_with_share("B", 4, 0)])
        )
        value = median_of_medians(
            dataset, lambda c: top_sharer_share(c) if c.urls else None
        )
        assert value == 1.0

    def test_empty_dataset(self):
        with pytest.raises(EmptyInput):
            median_of_medians(dataset_of(), pct_url_messages)

    @settings(max_examples=200, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(0, 30), min_size=1, max_size=8),
            min_size=1,
            max_size=8,
        )
    )
    def test_matches_bruteforce_oracle(self, shape):
        # Each inner list holds per-chat url-message counts; text fills to 30.
        participants = []
        for p_index, counts in enumerate(shape):
            chats = [
                chat_with_share(f"A{i}", c, 30 - c) for i, c in enumerate(counts)
            ]
            participants.append((f"p{p_index}", chats))
        dataset = dataset_of(*participants)
        expected = statistics.median(
            [
                statistics.median([100.0 * c / 30 for c in counts])
                for counts in shape
            ]
        )
        assert median_of_medians(dataset, pct_url_messages) == expected


class TestPerChatMetrics:
    def test_all_text_chat(self):
        assert pct_url_messages(chat_with_share("A", 0, 7)) == 0.0

    def test_quarter(self):
        assert pct_url_messages(chat_with_share("A", 1, 3)) == 25.0

    def test_paper_flat_aggregate(self):
        assert round(100 * 1094 / 113617, 2) == 0.96

    def test_top_sharer_single(self):
        assert top_sharer_share(chat_with_share("A", 3, 1)) == 1.0

    def test_top_sharer_three_to_one(self):
        chat = build_chat(
            "A",
            [
                ("2021-01-01", 0, "url"),
                ("2021-01-01", 0, "url"),
                ("2021-01-01", 0, "url"),
                ("2021-01-02", 1, "url"),
            ],
            [
                (0, "a.test", None, False),
                (1, "b.test", None, False),
                (2, "c.test", None, False),
                (3, "d.test", None, False),
            ],
        )
        assert top_sharer_share(chat) == 0.75

    def test_top_sharer_requires_urls(self):
        with pytest.raises(NoUrls):
            top_sharer_share(chat_with_share("A", 0, 3))

    def test_top_sharer_tie_same_fraction(self):
        chat = build_chat(
            "A",
            [("2021-01-01", 0, "url"), ("2021-01-01", 1, "url")],
            [(0, "a.test", None, False), (1, "b.test", None, False)],
        )
        assert top_sharer_share(chat) == 0.5

    def test_domain_repeat_median(self):
        chat = build_chat(
            "A",
            [("2021-01-01", 0, "url")] * 3,
            [
                (0, "often.test", None, False),
                (1, "often.test", None, False),
                (2, "rare.test", None, False),
            ],
        )
        assert domain_repeat_median(chat) == 1.5


class TestFrequencyTables:
    def mixed_dataset(self):
        # 25 records; hand-computed shares below.
        chat1 = build_chat(
            "A",
            [("2021-01-01", 0, "url")] * 10,
            [(i, "youtube.com", None, False) for i in range(10)],
        )
        chat2 = build_chat(
            "A",
            [("2021-02-01", 0, "url")] * 9,
            [(i, "google.com", None, False) for i in range(5)]
            + [(i + 5, "bbc.co.uk", ".uk", False) for i in range(4)],
        )
        chat3 = build_chat(
            "B",
            [("2021-03-01", 0, "url")] * 6,
            [(i, "lemonde.fr", ".fr", False) for i in range(3)]
            + [(3, "twitch.tv", None, False), (4, "twitch.tv", None, False)]
            + [(5, "zoom.us", ".us", False)],
        )
        return dataset_of(("p1", [chat1]), ("p2", [chat2, chat3]))

    def test_single_domain_dataset(self):
        dataset = dataset_of(("p1", [chat_with_share("A", 4, 0)]))
        assert domain_frequency(dataset) == [("example.com", 100.0)]
        assert tld_frequency(dataset) == [(".com", 100.0)]

    def test_hand_computed_mix(self):
        dataset = self.mixed_dataset()
        assert domain_frequency(dataset) == [
            ("youtube.com", 40.0),
            ("google.com", 20.0),
            ("bbc.co.uk", 16.0),
            ("lemonde.fr", 12.0),
            ("twitch.tv", 8.0),
            ("zoom.us", 4.0),
        ]
        assert tld_frequency(dataset) == [
            (".com", 60.0),
            (".uk", 16.0),
            (".fr", 12.0),
            (".tv", 8.0),
            (".us", 4.0),
        ]

    def test_shares_sum_to_100(self):
        total = sum(pct for _, pct in domain_frequency(self.mixed_dataset()))
        assert abs(total - 100.0) < 0.1

    def test_scale_invariance(self):
        dataset = self.mixed_dataset()
        doubled = dataset_of(
            *[
                (p.participant_id, p.chats + [c.clone() for c in p.chats])
                for p in dataset.participants
            ]
        )
        assert domain_frequency(doubled) == domain_frequency(dataset)
        assert tld_frequency(doubled) == tld_frequency(dataset)

    def test_requires_urls(self):
        with pytest.raises(NoUrls):
            domain_frequency(dataset_of(("p1", [chat_with_share("A", 0, 2)])))

    def test_cctld_presence(self):
        cctlds, pct = cctld_presence(self.mixed_dataset())
        assert cctlds == [".fr", ".uk", ".us"]
        assert pct == pytest.approx(100.0 * 2 / 3)

    def test_cctld_presence_excluded_codes_do_not_count(self):
        chat = build_chat(
            "A",
            [("2021-01-01", 0, "url")],
            [(0, "twitch.tv", None, False)],
        )
        cctlds, pct = cctld_presence(dataset_of(("p1", [chat])))
        assert cctlds == []
        assert pct == 0.0


class TestMembersDistribution:
    def test_all_two_member_chats(self):
        chats = [chat_with_share(label, 0, 3) for label in "ABC"]
        for chat in chats:
            chat.per_user.append(chat.per_user[0].__class__(1, 0, 0, 0))
            chat.num_users = 2
        rows, med = members_distribution(dataset_of(("p1", chats)))
        assert med == 2

    def test_paper_style_skew(self):
        chats = []
        for label, members in [("A", 2), ("B", 2), ("C", 25)]:
            messages = [("2021-01-01", alias, "text") for alias in range(members)]
            chats.append(build_chat(label, messages))
        rows, med = members_distribution(dataset_of(("p1", chats)))
        assert med == 2
        assert rows == [("p1", "A", 2), ("p1", "B", 2), ("p1", "C", 25)]

    def test_single_chat(self):
        messages = [("2021-01-01", alias, "text") for alias in range(6)]
        rows, med = members_distribution(
            dataset_of(("p1", [build_chat("A", messages)]))
        )
        assert med == 6

    def test_empty(self):
        with pytest.raises(EmptyInput):
            members_distribution(dataset_of())


class TestLoadDataset:
    def _write(self, path, chat):
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(payload_bytes(chat))

    def test_subdirectories_group_participants(self, tmp_path):
        self._write(tmp_path / "p1" / "a.json", chat_with_share("A", 1, 1))
        self._write(tmp_path / "p1" / "b.json", chat_with_share("B", 0, 2))
        self._write(tmp_path / "p2" / "a.json", chat_with_share("A", 2, 0))
        dataset = load_dataset(tmp_path)
        assert [p.participant_id for p in dataset.participants] == ["p1", "p2"]
        assert [len(p.chats) for p in dataset.participants] == [2, 1]
        assert [c.chat_label for c in dataset.participants[0].chats] == ["A", "B"]

    def test_flat_directory_is_one_participant(self, tmp_path):
        self._write(tmp_path / "a.json", chat_with_share("A", 1, 1))
        dataset = load_dataset(tmp_path)
        assert len(dataset.participants) == 1
        assert dataset.participants[0].participant_id == tmp_path.name

    def test_invalid_payload_raises(self, tmp_path):
        target = tmp_path / "p1" / "bad.json"
        target.parent.mkdir(parents=True)
        target.write_text("{}", encoding="utf-8")
        with pytest.raises(PayloadError):
            load_dataset(tmp_path)


class TestReportRendering:
    def test_empty_dataset_renders_na(self):
        text = render_text(build_report(dataset_of()))
        assert text.count("n/a") >= 4

    def test_flat_and_median_shares_labeled_distinctly(self):
        dataset = dataset_of(
            ("p1", [chat_with_share("A", 1, 3)]),
            ("p2", [chat_with_share("A", 1, 1)]),
        )
        report = build_report(dataset)
        # flat: 2 url messages / 6 total; median of medians: median(25, 50)
        assert report.url_share_flat_pct == pytest.approx(100 * 2 / 6)
        assert report.url_share_median_pct == pytest.approx(37.5)
        text = render_text(report)
        assert "flat (all messages pooled)" in text
        assert "median of participant medians" in text
        assert "33.33%" in text and "37.50%" in text

    def test_json_rendering_fields(self):
        dataset = dataset_of(("p1", [chat_with_share("A", 1, 3)]))
        rendered = render_json(build_report(dataset))
        assert rendered["totals"] == {
            "url_messages": 1,
            "text_messages": 3,
            "messages": 4,
            "url_records": 1,
        }
        json.dumps(rendered)  # must be serializable

    def test_table1_analog_median_row(self):
        dataset = dataset_of(
            ("p1", [chat_with_share("A", 1, 3), chat_with_share("B", 2, 2)]),
            ("p2", [chat_with_share("A", 3, 1)]),
        )
        report = build_report(dataset)
        assert report.median_chats == 1.5
        assert report.median_urls == pytest.approx((3 + 3) / 2)
        text = render_text(report)
        assert "[participants]" in text and "median" in text
