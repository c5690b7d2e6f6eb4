#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mycolex/complexity.hpp"
#include "mycolex/errors.hpp"
#include "mycolex/rng.hpp"
#include "oracles.hpp"

using namespace mycolex;

namespace {

SymbolSequence seq_of(std::vector<int> symbols) { return make_sequence(std::move(symbols)); }

CtmTable toy_table() {
    CtmTable t;
    t.block_size = 2;
    t.alphabet_size = 3;
    t.entries[{1, 1}] = 10.0;
    t.entries[{1, 2}] = 11.5;
    t.entries[{2, 1}] = 11.25;
    t.entries[{2, 2}] = 12.0;
    t.entries[{3, 3}] = 13.75;
    return t;
}

}  // namespace

TEST_CASE("shannon entropy") {
    CHECK(shannon_entropy(seq_of({7, 7, 7, 7})) == 0.0);
    CHECK(shannon_entropy(seq_of({1, 2, 3, 4})) == 2.0);
    CHECK_THROWS_AS(shannon_entropy(seq_of({})), config_error);

    SUBCASE("bounds, with equality cases") {
        Rng rng(73);
        for (int trial = 0; trial < 200; ++trial) {
            const int k = 2 + static_cast<int>(rng.uniform_int(0, 7));
            const int n = 2 + static_cast<int>(rng.uniform_int(0, 120));
            std::vector<int> symbols;
            for (int i = 0; i < n; ++i) {
                symbols.push_back(1 + static_cast<int>(rng.uniform_int(0, static_cast<std::uint64_t>(k - 1))));
            }
            const auto seq = seq_of(symbols);
            const double h = shannon_entropy(seq);
            CHECK(h >= 0.0);
            CHECK(h <= std::log2(static_cast<double>(seq.alphabet_size)) + 1e-12);
        }
    }
}

TEST_CASE("second order entropy") {
    CHECK(second_order_entropy(seq_of({5, 5, 5, 5, 5})) == 0.0);
    // pairs of (a,b,a,b): ab, ba, ab -> H(2/3, 1/3)
    const double expected = -(2.0 / 3.0) * std::log2(2.0 / 3.0) - (1.0 / 3.0) * std::log2(1.0 / 3.0);
    CHECK(second_order_entropy(seq_of({1, 2, 1, 2})) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.9183).epsilon(1e-4));
    CHECK_THROWS_AS(second_order_entropy(seq_of({3})), config_error);

    SUBCASE("H1 <= H2 <= 2*H1 on random sequences") {
        // Overlapping-pair entropy is an empirical estimate: for tiny
        // alphabets the upper bound fails by O(log n / n) boundary effects
        // (and the 4-symbol "abab" example above already sits below H1), so
        // the property is asserted over richer alphabets where both margins
        // are comfortably positive.
        Rng rng(79);
        for (int trial = 0; trial < 300; ++trial) {
            const int k = 6 + static_cast<int>(rng.uniform_int(0, 3));
            const int n = 32 + static_cast<int>(rng.uniform_int(0, 200));
            std::vector<int> symbols;
            for (int i = 0; i < n; ++i) {
                symbols.push_back(1 + static_cast<int>(rng.uniform_int(0, static_cast<std::uint64_t>(k - 1))));
            }
            const auto seq = seq_of(symbols);
            const double h1 = shannon_entropy(seq);
            const double h2 = second_order_entropy(seq);
            CHECK(h1 <= h2 + 1e-9);
            CHECK(h2 <= 2.0 * h1 + 1e-9);
        }
    }
}

TEST_CASE("lz76") {
    SUBCASE("repeated symbol parses into two phrases") {
        const auto r = lz_complexity(seq_of(std::vector<int>(10, 4)));
        CHECK(r.phrases == oracles::naive_lz76_phrases(std::vector<int>(10, 4)));
        CHECK(r.phrases == 2);
        CHECK(r.bits == doctest::Approx(2.0 * std::log2(10.0)));
    }
    SUBCASE("all-distinct symbols: one phrase each") {
        for (int k : {1, 2, 5, 9}) {
            std::vector<int> symbols;
            for (int i = 1; i <= k; ++i) symbols.push_back(i);
            const auto r = lz_complexity(seq_of(symbols));
            CHECK(r.phrases == k);
            CHECK(r.phrases == oracles::naive_lz76_phrases(symbols));
        }
    }
    SUBCASE("empty sequence is an error") {
        CHECK_THROWS_AS(lz_complexity(seq_of({})), config_error);
    }
    SUBCASE("classic worked example: 0001101001000101 has 6 phrases") {
        const std::vector<int> s = {0, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 1};
        CHECK(lz_complexity(seq_of(s)).phrases == 6);
        CHECK(oracles::naive_lz76_phrases(s) == 6);
    }
    SUBCASE("matches the naive oracle on random strings") {
        Rng rng(83);
        for (int trial = 0; trial < 800; ++trial) {
            const int k = 2 + static_cast<int>(rng.uniform_int(0, 7));
            const int n = 1 + static_cast<int>(rng.uniform_int(0, 63));
            std::vector<int> symbols;
            for (int i = 0; i < n; ++i) {
                symbols.push_back(1 + static_cast<int>(rng.uniform_int(0, static_cast<std::uint64_t>(k - 1))));
            }
            CHECK(lz_complexity(seq_of(symbols)).phrases ==
                  oracles::naive_lz76_phrases(symbols));
        }
    }
    SUBCASE("phrase count never drops when a suffix is appended") {
        Rng rng(89);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<int> symbols;
            const int n = 2 + static_cast<int>(rng.uniform_int(0, 40));
            for (int i = 0; i < n; ++i) {
                symbols.push_back(1 + static_cast<int>(rng.uniform_int(0, 2)));
            }
            std::vector<int> head(symbols.begin(), symbols.begin() + n / 2);
            if (head.empty()) continue;
            CHECK(lz_complexity(seq_of(head)).phrases <=
                  lz_complexity(seq_of(symbols)).phrases);
        }
    }
}

TEST_CASE("bdm") {
    const CtmTable table = toy_table();

    SUBCASE("single tabled block") {
        CHECK(bdm(seq_of({1, 1}), table).bits == doctest::Approx(10.0).epsilon(1e-15));
    }
    SUBCASE("multiplicity adds log2") {
        const auto r = bdm(seq_of({1, 1, 1, 1, 1, 1, 1, 1}), table);
        CHECK(r.bits == doctest::Approx(12.0).epsilon(1e-15));  // 10 + log2(4)
        CHECK(r.missing_blocks == 0);
    }
    SUBCASE("hand-summed mixed blocks") {
        // blocks: (1,2) x2, (2,1) x1, (3,3) x1 -> 11.5+1 + 11.25 + 13.75
        const auto r = bdm(seq_of({1, 2, 2, 1, 1, 2, 3, 3}), table);
        CHECK(r.bits == doctest::Approx(11.5 + 1.0 + 11.25 + 13.75).epsilon(1e-15));
    }
    SUBCASE("trailing short block dropped") {
        const auto full = bdm(seq_of({1, 1}), table);
        const auto extra = bdm(seq_of({1, 1, 3}), table);
        CHECK(extra.bits == doctest::Approx(full.bits));
    }
    SUBCASE("missing block falls back to the maximum entry") {
        const auto r = bdm(seq_of({2, 3}), table);  // (2,3) not tabled
        CHECK(r.bits == doctest::Approx(13.75));
        CHECK(r.missing_blocks == 1);
    }
    SUBCASE("block-level shuffle leaves the value unchanged") {
        Rng rng(97);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::vector<int>> blocks;
            const int nb = 2 + static_cast<int>(rng.uniform_int(0, 10));
            for (int b = 0; b < nb; ++b) {
                blocks.push_back({1 + static_cast<int>(rng.uniform_int(0, 2)),
                                  1 + static_cast<int>(rng.uniform_int(0, 2))});
            }
            std::vector<int> flat;
            for (const auto& b : blocks) flat.insert(flat.end(), b.begin(), b.end());
            const double before = bdm(seq_of(flat), table).bits;
            for (int shuffle = 0; shuffle < 5; ++shuffle) {
                const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::uint64_t>(nb - 1)));
                const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::uint64_t>(nb - 1)));
                std::swap(blocks[i], blocks[j]);
            }
            std::vector<int> shuffled;
            for (const auto& b : blocks) shuffled.insert(shuffled.end(), b.begin(), b.end());
            CHECK(bdm(seq_of(shuffled), table).bits == doctest::Approx(before).epsilon(1e-12));
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(bdm(seq_of({1}), table), config_error);  // shorter than block
        CtmTable empty;
        CHECK_THROWS_AS(bdm(seq_of({1, 1}), empty), config_error);
    }
}

TEST_CASE("ctm table tsv") {
    const CtmTable table = toy_table();
    const std::string tsv = ctm_table_to_tsv(table);
    const CtmTable back = ctm_table_from_tsv(tsv);
    CHECK(back.block_size == 2);
    CHECK(back.alphabet_size == 3);
    REQUIRE(back.entries.size() == table.entries.size());
    for (const auto& [block, bits] : table.entries) {
        CHECK(back.entries.at(block) == doctest::Approx(bits).epsilon(1e-12));
    }

    CHECK_THROWS_AS(ctm_table_from_tsv(""), io_error);
    CHECK_THROWS_AS(ctm_table_from_tsv("wrong\theader\n"), io_error);
    CHECK_THROWS_AS(ctm_table_from_tsv("block\tbits\n1,2\tabc\n"), io_error);
    CHECK_THROWS_AS(ctm_table_from_tsv("block\tbits\n1,2\t3.0\n1,2,3\t4.0\n"), io_error);
    CHECK_THROWS_AS(ctm_table_from_tsv("block\tbits\n"), io_error);
    CHECK_THROWS_AS(load_ctm_table("/nonexistent/ctm.tsv"), io_error);
}

TEST_CASE("cap alphabet") {
    const auto capped = cap_alphabet(seq_of({1, 12, 3, 10, 2}), 9);
    CHECK(capped.symbols == std::vector<int>{1, 3, 2});
    CHECK(capped.alphabet_size == 9);

    const auto unchanged = cap_alphabet(seq_of({1, 2, 9}), 9);
    CHECK(unchanged.symbols == std::vector<int>{1, 2, 9});  // 9 itself stays

    SUBCASE("length drops by the number of oversized symbols") {
        Rng rng(101);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<int> symbols;
            int oversized = 0;
            const int n = static_cast<int>(rng.uniform_int(0, 100));
            for (int i = 0; i < n; ++i) {
                const int s = 1 + static_cast<int>(rng.uniform_int(0, 14));
                symbols.push_back(s);
                if (s > 9) ++oversized;
            }
            const auto out = cap_alphabet(seq_of(symbols), 9);
            CHECK(static_cast<int>(out.symbols.size()) ==
                  static_cast<int>(symbols.size()) - oversized);
        }
    }
}

TEST_CASE("normalize report") {
    ComplexityReport r;
    r.input_length = 130;
    r.lz_bits = 910.0;
    r.shannon_bits = 2.3;
    r.second_order_bits = 3.7;
    r.lz_phrases = 130;
    const auto n = normalize_report(r);
    CHECK(n.lz_bits == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(n.normalized);

    ComplexityReport unit;
    unit.input_length = 1;
    unit.shannon_bits = 0.0;
    unit.lz_bits = 1.0;
    const auto same = normalize_report(unit);
    CHECK(same.lz_bits == unit.lz_bits);
    CHECK(same.shannon_bits == unit.shannon_bits);

    SUBCASE("round trip within 1e-12") {
        ComplexityReport x;
        x.input_length = 37;
        x.shannon_bits = 2.123456;
        x.second_order_bits = 3.9;
        x.lz_bits = 421.0;
        x.bdm_bits = 600.5;
        const auto norm = normalize_report(x);
        CHECK(norm.shannon_bits * 37.0 == doctest::Approx(x.shannon_bits).epsilon(1e-12));
        CHECK(norm.lz_bits * 37.0 == doctest::Approx(x.lz_bits).epsilon(1e-12));
        CHECK(*norm.bdm_bits * 37.0 == doctest::Approx(*x.bdm_bits).epsilon(1e-12));
    }
    SUBCASE("zero length rejected") {
        ComplexityReport z;
        z.input_length = 0;
        CHECK_THROWS_AS(normalize_report(z), config_error);
    }
}

TEST_CASE("compute_complexity wires everything") {
    const CtmTable table = toy_table();
    const auto seq = seq_of({1, 2, 1, 2, 1, 1, 2, 2});
    const auto report = compute_complexity(seq, &table);
    CHECK(report.input_length == 8);
    CHECK(report.shannon_bits == doctest::Approx(1.0));
    CHECK(report.bdm_bits.has_value());
    const auto without = compute_complexity(seq, nullptr);
    CHECK(!without.bdm_bits.has_value());
}
