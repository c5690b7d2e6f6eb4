#include "mycolex/complexity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mycolex/errors.hpp"

namespace mycolex {

SymbolSequence make_sequence(std::vector<int> symbols) {
    SymbolSequence seq;
    seq.symbols = std::move(symbols);
    std::set<int> distinct(seq.symbols.begin(), seq.symbols.end());
    seq.alphabet_size = static_cast<int>(distinct.size());
    return seq;
}

SymbolSequence cap_alphabet(const SymbolSequence& seq, int cap) {
    if (cap < 1) throw config_error("alphabet cap must be >= 1");
    SymbolSequence out;
    out.alphabet_size = cap;
    out.symbols.reserve(seq.symbols.size());
    for (int s : seq.symbols) {
        if (s <= cap) out.symbols.push_back(s);
    }
    return out;
}

namespace {

double entropy_of_counts(const std::map<std::vector<int>, std::int64_t>& counts,
                         std::int64_t total) {
    double h = 0.0;
    for (const auto& [key, count] : counts) {
        const double f = static_cast<double>(count) / static_cast<double>(total);
        h -= f * std::log2(f);
    }
    return h;
}

}  // namespace

double shannon_entropy(const SymbolSequence& seq) {
    if (seq.symbols.empty()) throw config_error("empty sequence");
    std::map<std::vector<int>, std::int64_t> counts;
    for (int s : seq.symbols) ++counts[{s}];
    return entropy_of_counts(counts, static_cast<std::int64_t>(seq.symbols.size()));
}

double second_order_entropy(const SymbolSequence& seq) {
    if (seq.symbols.size() < 2) throw config_error("sequence too short for pair entropy");
    std::map<std::vector<int>, std::int64_t> counts;
    for (std::size_t i = 0; i + 1 < seq.symbols.size(); ++i) {
        ++counts[{seq.symbols[i], seq.symbols[i + 1]}];
    }
    return entropy_of_counts(counts, static_cast<std::int64_t>(seq.symbols.size()) - 1);
}

LzResult lz_complexity(const SymbolSequence& seq) {
    const auto& s = seq.symbols;
    const auto n = static_cast<std::int64_t>(s.size());
    if (n == 0) throw config_error("empty sequence");

    // Kaspar-Schuster scan of the production parsing. l is the current
    // phrase start, i < l the candidate occurrence being matched, k the
    // match length under test; k_max tracks the phrase length (longest
    // reproducible prefix plus the innovation symbol) over all i.
    auto at = [&](std::int64_t idx) { return s[static_cast<std::size_t>(idx)]; };
    std::int64_t phrases = 1;
    std::int64_t l = 1;
    if (l + 1 <= n) {
        std::int64_t i = 0, k = 1, k_max = 1;
        while (true) {
            if (at(i + k - 1) == at(l + k - 1)) {
                ++k;
                if (l + k > n) {
                    ++phrases;  // tail reproducible to the end, no innovation
                    break;
                }
            } else {
                k_max = std::max(k_max, k);
                ++i;
                if (i == l) {
                    ++phrases;
                    l += k_max;
                    if (l + 1 > n) break;
                    i = 0;
                    k = 1;
                    k_max = 1;
                } else {
                    k = 1;
                }
            }
        }
    }

    LzResult result;
    result.phrases = phrases;
    result.bits = static_cast<double>(phrases) *
                  std::log2(std::max<std::int64_t>(2, n));
    return result;
}

double CtmTable::max_entry() const {
    double best = 0.0;
    for (const auto& [block, bits] : entries) best = std::max(best, bits);
    return best;
}

CtmTable ctm_table_from_tsv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw io_error("empty CTM table");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "block\tbits") throw io_error("CTM table header must be 'block\\tbits'");

    CtmTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw io_error("CTM table line " + std::to_string(line_no) + ": missing tab");
        }
        std::vector<int> block;
        {
            const std::string key = line.substr(0, tab);
            std::size_t pos = 0;
            while (pos <= key.size()) {
                std::size_t comma = key.find(',', pos);
                if (comma == std::string::npos) comma = key.size();
                int symbol = 0;
                auto [ptr, ec] = std::from_chars(key.data() + pos, key.data() + comma, symbol);
                if (ec != std::errc() || ptr != key.data() + comma) {
                    throw io_error("CTM table line " + std::to_string(line_no) +
                                   ": bad block '" + key + "'");
                }
                block.push_back(symbol);
                pos = comma + 1;
                if (comma == key.size()) break;
            }
        }
        double bits = 0.0;
        {
            const char* first = line.data() + tab + 1;
            const char* last = line.data() + line.size();
            auto [ptr, ec] = std::from_chars(first, last, bits);
            if (ec != std::errc() || ptr != last) {
                throw io_error("CTM table line " + std::to_string(line_no) + ": bad bits value");
            }
        }
        if (table.block_size == 0) {
            table.block_size = static_cast<int>(block.size());
        } else if (static_cast<int>(block.size()) != table.block_size) {
            throw io_error("CTM table line " + std::to_string(line_no) +
                           ": block size mismatch (expected " +
                           std::to_string(table.block_size) + " symbols)");
        }
        for (int s : block) table.alphabet_size = std::max(table.alphabet_size, s);
        table.entries[std::move(block)] = bits;
    }
    if (table.entries.empty()) throw io_error("CTM table has no entries");
    return table;
}

CtmTable load_ctm_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return ctm_table_from_tsv(buf.str());
}

std::string ctm_table_to_tsv(const CtmTable& table) {
    std::string out = "block\tbits";
    out += '\n';
    char buf[64];
    for (const auto& [block, bits] : table.entries) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i > 0) out += ',';
            out += std::to_string(block[i]);
        }
        std::snprintf(buf, sizeof(buf), "\t%.12g\n", bits);
        out += buf;
    }
    return out;
}

BdmResult bdm(const SymbolSequence& seq, const CtmTable& table) {
    if (table.entries.empty()) throw config_error("empty CTM table");
    const auto block_size = static_cast<std::size_t>(table.block_size);
    if (seq.symbols.size() < block_size) {
        throw config_error("sequence shorter than the table block size (" +
                           std::to_string(table.block_size) + ")");
    }
    std::map<std::vector<int>, std::int64_t> multiplicity;
    for (std::size_t start = 0; start + block_size <= seq.symbols.size();
         start += block_size) {
        std::vector<int> block(seq.symbols.begin() + static_cast<std::ptrdiff_t>(start),
                               seq.symbols.begin() + static_cast<std::ptrdiff_t>(start + block_size));
        ++multiplicity[std::move(block)];
    }
    BdmResult result;
    const double fallback = table.max_entry();
    for (const auto& [block, count] : multiplicity) {
        auto it = table.entries.find(block);
        double ctm = fallback;
        if (it != table.entries.end()) {
            ctm = it->second;
        } else {
            ++result.missing_blocks;
        }
        result.bits += ctm + std::log2(static_cast<double>(count));
    }
    return result;
}

ComplexityReport compute_complexity(const SymbolSequence& seq, const CtmTable* table) {
    ComplexityReport r;
    r.input_length = static_cast<std::int64_t>(seq.symbols.size());
    r.alphabet_size = seq.alphabet_size;
    r.shannon_bits = shannon_entropy(seq);
    r.second_order_bits = seq.symbols.size() >= 2 ? second_order_entropy(seq) : 0.0;
    const LzResult lz = lz_complexity(seq);
    r.lz_phrases = lz.phrases;
    r.lz_bits = lz.bits;
    if (table != nullptr) {
        const BdmResult b = bdm(seq, *table);
        r.bdm_bits = b.bits;
        r.bdm_missing_blocks = b.missing_blocks;
    }
    return r;
}

ComplexityReport normalize_report(const ComplexityReport& r) {
    if (r.input_length <= 0) throw config_error("cannot normalize a zero-length report");
    ComplexityReport out = r;
    const auto n = static_cast<double>(r.input_length);
    out.shannon_bits /= n;
    out.second_order_bits /= n;
    out.lz_bits /= n;
    if (out.bdm_bits) *out.bdm_bits /= n;
    out.normalized = true;
    return out;
}

}  // namespace mycolex
