// Copyright 2026 The cka Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cka/postprocess/ldpc.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "cka/error.hpp"
#include "cka/random.hpp"

namespace cka::postprocess {

CodeRate CodeRate::parse(std::string_view text) {
    if (text == "1/2") return half();
    if (text == "3/5") return three_fifths();
    if (text == "2/3") return two_thirds();
    throw ConfigurationError("unsupported code rate '" + std::string(text) + "' (expected 1/2, 3/5 or 2/3)");
}

std::string CodeRate::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

ParityCheckMatrix::ParityCheckMatrix(std::uint32_t n, std::uint32_t k,
                                     const std::vector<std::vector<std::uint32_t>>& rows)
    : n_(n), k_(k) {
    if (k == 0 || k >= n) throw ConfigurationError("message length must satisfy 0 < k < N");
    if (rows.size() != n - k) throw ConfigurationError("H' must have N - k rows");
    row_ptr_.reserve(rows.size() + 1);
    row_ptr_.push_back(0);
    std::vector<std::uint32_t> col_count(k, 0);
    for (const auto& r : rows) {
        std::vector<std::uint32_t> sorted = r;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw ConfigurationError("duplicate column index in a parity row");
        }
        for (auto c : sorted) {
            if (c >= k) throw ConfigurationError("H' column index out of range");
            row_cols_.push_back(c);
            ++col_count[c];
        }
        row_ptr_.push_back(static_cast<std::uint32_t>(row_cols_.size()));
    }
    col_ptr_.assign(k + 1, 0);
    for (std::uint32_t j = 0; j < k; ++j) col_ptr_[j + 1] = col_ptr_[j] + col_count[j];
    col_rows_.resize(row_cols_.size());
    col_edges_.resize(row_cols_.size());
    std::vector<std::uint32_t> fill(col_ptr_.begin(), col_ptr_.end() - 1);
    for (std::uint32_t i = 0; i + 1 < row_ptr_.size(); ++i) {
        for (std::uint32_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) {
            const auto c = row_cols_[e];
            col_rows_[fill[c]] = i;
            col_edges_[fill[c]] = e;
            ++fill[c];
        }
    }
}

std::span<const std::uint32_t> ParityCheckMatrix::row(std::uint32_t i) const {
    return {row_cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
}

std::span<const std::uint32_t> ParityCheckMatrix::column(std::uint32_t j) const {
    return {col_rows_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
}

std::span<const std::uint32_t> ParityCheckMatrix::column_edges(std::uint32_t j) const {
    return {col_edges_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
}

std::vector<std::uint32_t> ParityCheckMatrix::full_row(std::uint32_t i) const {
    auto r = row(i);
    std::vector<std::uint32_t> out(r.begin(), r.end());
    if (i > 0) out.push_back(k_ + i - 1);
    out.push_back(k_ + i);
    return out;
}

bool ParityCheckMatrix::is_four_cycle_free() const {
    // Every pair of rows may share at most one column. Pairs are enumerated
    // per column and sorted to find repeats.
    std::vector<std::uint64_t> pairs;
    auto add_pair = [&](std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        pairs.push_back((static_cast<std::uint64_t>(a) << 32) | b);
    };
    for (std::uint32_t j = 0; j < k_; ++j) {
        auto rows = column(j);
        for (std::size_t x = 0; x < rows.size(); ++x) {
            for (std::size_t y = x + 1; y < rows.size(); ++y) add_pair(rows[x], rows[y]);
        }
    }
    for (std::uint32_t i = 0; i + 1 < num_checks(); ++i) add_pair(i, i + 1);
    std::sort(pairs.begin(), pairs.end());
    return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

namespace {

class CodeBuilder {
public:
    CodeBuilder(std::uint32_t m, std::uint32_t k, std::vector<int> weights)
        : m_(m), k_(k), weights_(std::move(weights)), neighbours_(m) {}

    bool build(Rng& rng, std::vector<std::vector<std::uint32_t>>& rows_out) {
        for (auto& nb : neighbours_) nb.clear();
        for (std::uint32_t i = 0; i + 1 < m_; ++i) {
            neighbours_[i].push_back(i + 1);
            neighbours_[i + 1].push_back(i);
        }
        // One socket per edge, spread as evenly as possible over the rows.
        std::uint64_t edges = 0;
        for (int w : weights_) edges += static_cast<std::uint64_t>(w);
        std::vector<std::uint32_t> sockets;
        sockets.reserve(edges);
        for (std::uint64_t e = 0; e < edges; ++e) sockets.push_back(static_cast<std::uint32_t>(e % m_));
        for (std::size_t i = sockets.size(); i > 1; --i) std::swap(sockets[i - 1], sockets[uniform_below(rng, i)]);

        rows_out.assign(m_, {});
        std::size_t next = 0;
        std::vector<std::uint32_t> chosen;
        for (std::uint32_t col = 0; col < k_; ++col) {
            chosen.clear();
            for (int w = 0; w < weights_[col]; ++w) {
                bool placed = false;
                for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
                    const std::size_t remaining = sockets.size() - next;
                    const std::size_t pick = next + (attempt == 0 ? 0 : uniform_below(rng, remaining));
                    const std::uint32_t row = sockets[pick];
                    if (acceptable(row, chosen)) {
                        std::swap(sockets[next], sockets[pick]);
                        ++next;
                        chosen.push_back(row);
                        placed = true;
                    }
                }
                if (!placed) return false;
            }
            for (std::size_t x = 0; x < chosen.size(); ++x) {
                rows_out[chosen[x]].push_back(col);
                for (std::size_t y = 0; y < chosen.size(); ++y) {
                    if (x != y) neighbours_[chosen[x]].push_back(chosen[y]);
                }
            }
        }
        return true;
    }

private:
    bool acceptable(std::uint32_t row, const std::vector<std::uint32_t>& chosen) const {
        for (auto c : chosen) {
            if (c == row) return false;
            const auto& nb = neighbours_[c];
            if (std::find(nb.begin(), nb.end(), row) != nb.end()) return false;
        }
        return true;
    }

    std::uint32_t m_;
    std::uint32_t k_;
    std::vector<int> weights_;
    std::vector<std::vector<std::uint32_t>> neighbours_;
};

}  // namespace

ParityCheckMatrix build_code(std::uint32_t n, CodeRate rate, std::uint64_t seed, double column_weight,
                             bool allow_any_length) {
    if (!allow_any_length && n != 16200 && n != 64800) {
        throw ConfigurationError("block length must be 16200 or 64800");
    }
    if (!(rate == CodeRate::half() || rate == CodeRate::three_fifths() || rate == CodeRate::two_thirds())) {
        throw ConfigurationError("unsupported code rate " + rate.to_string());
    }
    if (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(rate.num) % static_cast<std::uint64_t>(rate.den) != 0) {
        throw ConfigurationError("k = r N is not an integer for N = " + std::to_string(n));
    }
    const auto k = static_cast<std::uint32_t>(static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(rate.num) /
                                              static_cast<std::uint64_t>(rate.den));
    const std::uint32_t m = n - k;
    if (!(column_weight >= 2.0) || column_weight > static_cast<double>(m)) {
        throw ConfigurationError("column weight out of range");
    }
    // Fractional weights mix floor(w) and floor(w) + 1 columns, interleaved.
    const int low = static_cast<int>(column_weight);
    const double frac = column_weight - low;
    std::vector<int> weights(k, low);
    for (std::uint32_t j = 0; j < k; ++j) {
        const auto before = static_cast<std::uint64_t>(frac * j);
        const auto after = static_cast<std::uint64_t>(frac * (j + 1));
        if (after > before) weights[j] = low + 1;
    }
    CodeBuilder builder(m, k, std::move(weights));
    std::vector<std::vector<std::uint32_t>> rows;
    for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
        Rng rng(derive_seed(seed, attempt));
        if (builder.build(rng, rows)) return ParityCheckMatrix(n, k, rows);
    }
    throw ConfigurationError("could not construct a 4-cycle-free code for these parameters");
}

void write_matrix(std::ostream& out, const ParityCheckMatrix& h) {
    out << h.n() << ' ' << h.k() << '\n';
    for (std::uint32_t i = 0; i < h.num_checks(); ++i) {
        const auto cols = h.full_row(i);
        for (std::size_t x = 0; x < cols.size(); ++x) out << (x ? " " : "") << cols[x];
        out << '\n';
    }
}

ParityCheckMatrix read_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("matrix file is empty");
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    {
        std::istringstream head(line);
        if (!(head >> n >> k) || k == 0 || k >= n) throw IoError("matrix header must be `N k` with 0 < k < N");
    }
    const std::uint32_t m = n - k;
    std::vector<std::vector<std::uint32_t>> rows(m);
    for (std::uint32_t i = 0; i < m; ++i) {
        if (!std::getline(in, line)) throw IoError("matrix file has fewer than N - k rows");
        std::istringstream is(line);
        std::uint32_t c = 0;
        std::vector<std::uint32_t> parity;
        while (is >> c) {
            if (c >= n) throw IoError("matrix column index out of range");
            if (c < k) {
                rows[i].push_back(c);
            } else {
                parity.push_back(c - k);
            }
        }
        if (!is.eof()) throw IoError("malformed matrix row " + std::to_string(i));
        std::sort(parity.begin(), parity.end());
        const std::vector<std::uint32_t> expected =
            i == 0 ? std::vector<std::uint32_t>{0} : std::vector<std::uint32_t>{i - 1, i};
        if (parity != expected) throw IoError("parity part of row " + std::to_string(i) + " is not a staircase");
    }
    return ParityCheckMatrix(n, k, rows);
}

BitVec encode_syndrome(const BitVec& block, const ParityCheckMatrix& h) {
    if (block.size() != h.k()) {
        throw ContractError("block has " + std::to_string(block.size()) + " bits, code expects " +
                            std::to_string(h.k()));
    }
    BitVec parity(h.num_checks());
    bool previous = false;
    for (std::uint32_t i = 0; i < h.num_checks(); ++i) {
        bool acc = previous;
        for (auto c : h.row(i)) acc ^= block[c];
        parity.set(i, acc);
        previous = acc;
    }
    return parity;
}

namespace {

constexpr double kTanhLimit = 1.0 - 1e-12;

BitVec hard_decision(std::span<const double> posterior) {
    BitVec out(posterior.size());
    for (std::size_t j = 0; j < posterior.size(); ++j) {
        if (posterior[j] < 0.0) out.set(j, true);
    }
    return out;
}

}  // namespace

DecodeResult decode_bp_llr(std::span<const double> llr, const BitVec& alice_parity, const ParityCheckMatrix& h,
                           int max_iters) {
    if (llr.size() != h.k()) throw ContractError("LLR vector length does not match the code");
    if (alice_parity.size() != h.num_checks()) throw ContractError("parity length does not match the code");
    if (max_iters < 1) throw ContractError("max_iters must be at least 1");

    // Row i of H' must sum to s_i = p_i xor p_(i-1).
    std::vector<double> row_sign(h.num_checks());
    for (std::uint32_t i = 0; i < h.num_checks(); ++i) {
        const bool s = alice_parity[i] ^ (i > 0 && alice_parity[i - 1]);
        row_sign[i] = s ? -1.0 : 1.0;
    }

    DecodeResult result;
    result.corrected = hard_decision(llr);
    if (encode_syndrome(result.corrected, h) == alice_parity) {
        result.converged = true;
        return result;
    }

    const std::size_t edges = h.num_edges();
    std::vector<double> v2c(edges);
    std::vector<double> c2v(edges, 0.0);
    std::vector<double> posterior(llr.begin(), llr.end());
    std::vector<double> fwd;
    for (std::uint32_t j = 0; j < h.k(); ++j) {
        for (auto e : h.column_edges(j)) v2c[e] = llr[j];
    }

    for (int iter = 1; iter <= max_iters; ++iter) {
        for (std::uint32_t i = 0; i < h.num_checks(); ++i) {
            const std::uint32_t begin = h.row_begin(i);
            const std::size_t degree = h.row(i).size();
            fwd.assign(degree + 1, 1.0);
            for (std::size_t x = 0; x < degree; ++x) fwd[x + 1] = fwd[x] * std::tanh(0.5 * v2c[begin + x]);
            double bwd = 1.0;
            for (std::size_t x = degree; x-- > 0;) {
                const double t = std::clamp(row_sign[i] * fwd[x] * bwd, -kTanhLimit, kTanhLimit);
                const double own = std::tanh(0.5 * v2c[begin + x]);
                c2v[begin + x] = 2.0 * std::atanh(t);
                bwd *= own;
            }
        }
        for (std::uint32_t j = 0; j < h.k(); ++j) {
            double total = llr[j];
            const auto col = h.column_edges(j);
            for (auto e : col) total += c2v[e];
            posterior[j] = total;
            for (auto e : col) v2c[e] = total - c2v[e];
        }
        result.corrected = hard_decision(posterior);
        result.iterations = iter;
        if (encode_syndrome(result.corrected, h) == alice_parity) {
            result.converged = true;
            return result;
        }
    }
    return result;
}

DecodeResult decode_bp(const BitVec& noisy_block, const BitVec& alice_parity, const ParityCheckMatrix& h,
                       double crossover, int max_iters) {
    if (noisy_block.size() != h.k()) throw ContractError("block length does not match the code");
    const double q = std::clamp(crossover, kMinCrossover, kMaxCrossover);
    const double magnitude = std::log((1.0 - q) / q);
    std::vector<double> llr(noisy_block.size());
    for (std::size_t j = 0; j < llr.size(); ++j) llr[j] = noisy_block[j] ? -magnitude : magnitude;
    return decode_bp_llr(llr, alice_parity, h, max_iters);
}

}  // namespace cka::postprocess
