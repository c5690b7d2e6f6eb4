#ifndef MYCOLEX_COMPLEXITY_HPP
#define MYCOLEX_COMPLEXITY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mycolex {

// Sequence over a finite alphabet (word lengths, optionally capped).
// alphabet_size is the number of distinct observed symbols unless a cap was
// applied, in which case it equals the cap.
struct SymbolSequence {
    std::vector<int> symbols;
    int alphabet_size = 0;
};

// Builds a sequence from word lengths; alphabet_size = distinct symbol count.
SymbolSequence make_sequence(std::vector<int> symbols);

// Deletes symbols greater than cap (they are removed, not clamped) and sets
// alphabet_size = cap.
SymbolSequence cap_alphabet(const SymbolSequence& seq, int cap = 9);

// H = -sum_a f(a) log2 f(a) over empirical symbol frequencies. Requires a
// non-empty sequence.
double shannon_entropy(const SymbolSequence& seq);

// Shannon entropy of the empirical distribution of overlapping adjacent
// pairs (block entropy at block length 2). Requires length >= 2.
double second_order_entropy(const SymbolSequence& seq);

struct LzResult {
    std::int64_t phrases = 0;
    double bits = 0.0;  // phrases * log2(max(2, length))
};

// LZ76 exhaustive-history production parsing: each phrase extends while it
// can be reproduced from the already-seen text (overlap allowed) and closes
// with one innovation symbol; the final phrase may close without one.
LzResult lz_complexity(const SymbolSequence& seq);

// CTM lookup table for BDM. Entries map fixed-size blocks to bits.
struct CtmTable {
    int block_size = 0;
    int alphabet_size = 0;
    std::map<std::vector<int>, double> entries;

    double max_entry() const;
};

// TSV with header "block<TAB>bits"; blocks are symbols joined by ','.
CtmTable load_ctm_table(const std::string& path);
CtmTable ctm_table_from_tsv(const std::string& text);
std::string ctm_table_to_tsv(const CtmTable& table);

struct BdmResult {
    double bits = 0.0;
    std::int64_t missing_blocks = 0;  // distinct blocks absent from the table
};

// BDM = sum over distinct blocks b of CTM(b) + log2(multiplicity(b)), over
// non-overlapping blocks of table.block_size; a trailing short block is
// dropped. Blocks absent from the table contribute the table's maximum entry
// (never underestimating) and are counted in missing_blocks.
BdmResult bdm(const SymbolSequence& seq, const CtmTable& table);

struct ComplexityReport {
    std::int64_t input_length = 0;
    int alphabet_size = 0;
    double shannon_bits = 0.0;
    double second_order_bits = 0.0;
    std::int64_t lz_phrases = 0;
    double lz_bits = 0.0;
    std::optional<double> bdm_bits;
    std::int64_t bdm_missing_blocks = 0;
    bool normalized = false;  // true after normalize_report
};

// Computes all measures; BDM only when a table is supplied. Sequences of
// length < 2 get second_order_bits = 0.
ComplexityReport compute_complexity(const SymbolSequence& seq,
                                    const CtmTable* table = nullptr);

// Each measure divided by input_length.
ComplexityReport normalize_report(const ComplexityReport& r);

}  // namespace mycolex

#endif
