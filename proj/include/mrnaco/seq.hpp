#pragma once

// Validated residue/base strings and dot-bracket structures.
// Positions in BasePair / PairSet are 1-indexed.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrnaco/error.hpp"

namespace mrnaco {

inline constexpr std::string_view kAminoAcids = "ACDEFGHIKLMNPQRSTVWY";

inline bool is_amino_acid(char c) { return kAminoAcids.find(c) != std::string_view::npos; }

inline bool is_rna_base(char c) { return c == 'A' || c == 'C' || c == 'G' || c == 'U'; }

class AminoAcidSeq {
   public:
    AminoAcidSeq() = default;

    static AminoAcidSeq parse(std::string_view text) {
        if (text.empty()) throw ValidationError("empty sequence");
        std::string residues;
        residues.reserve(text.size());
        for (std::size_t k = 0; k < text.size(); ++k) {
            const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[k])));
            if (!is_amino_acid(c)) {
                throw ValidationError("invalid amino acid '" + std::string(1, text[k]) +
                                      "' at position " + std::to_string(k + 1));
            }
            residues.push_back(c);
        }
        return AminoAcidSeq(std::move(residues));
    }

    const std::string& str() const { return residues_; }
    std::size_t size() const { return residues_.size(); }
    char operator[](std::size_t k) const { return residues_[k]; }
    auto begin() const { return residues_.begin(); }
    auto end() const { return residues_.end(); }

    friend bool operator==(const AminoAcidSeq&, const AminoAcidSeq&) = default;

   private:
    explicit AminoAcidSeq(std::string residues) : residues_(std::move(residues)) {}
    std::string residues_;
};

class NucleotideSeq {
   public:
    NucleotideSeq() = default;

    static NucleotideSeq parse(std::string_view text, bool t_to_u = true) {
        if (text.empty()) throw ValidationError("empty sequence");
        std::string bases;
        bases.reserve(text.size());
        for (std::size_t k = 0; k < text.size(); ++k) {
            char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[k])));
            if (c == 'T' && t_to_u) c = 'U';
            if (!is_rna_base(c)) {
                throw ValidationError("invalid nucleotide '" + std::string(1, text[k]) +
                                      "' at position " + std::to_string(k + 1));
            }
            bases.push_back(c);
        }
        return NucleotideSeq(std::move(bases));
    }

    const std::string& str() const { return bases_; }
    std::size_t size() const { return bases_.size(); }
    /// 0-indexed access.
    char operator[](std::size_t k) const { return bases_[k]; }
    /// 1-indexed access, matching pair coordinates.
    char at(int pos) const { return bases_.at(static_cast<std::size_t>(pos - 1)); }

    friend bool operator==(const NucleotideSeq&, const NucleotideSeq&) = default;

   private:
    explicit NucleotideSeq(std::string bases) : bases_(std::move(bases)) {}
    std::string bases_;
};

struct BasePair {
    int i = 0;
    int j = 0;
    friend auto operator<=>(const BasePair&, const BasePair&) = default;
};

inline bool pairs_cross(const BasePair& a, const BasePair& b) {
    return (a.i < b.i && b.i < a.j && a.j < b.j) || (b.i < a.i && a.i < b.j && b.j < a.j);
}

/// Non-crossing partial matching over positions 1..n.
class PairSet {
   public:
    PairSet() = default;

    /// Validates range, i < j, one partner per position and planarity.
    PairSet(std::size_t n, std::vector<BasePair> pairs) : n_(n), pairs_(std::move(pairs)) {
        std::sort(pairs_.begin(), pairs_.end());
        std::vector<int> partner(n_ + 1, 0);
        for (const auto& p : pairs_) {
            if (p.i < 1 || p.j > static_cast<int>(n_) || p.i >= p.j) {
                throw ValidationError("pair (" + std::to_string(p.i) + "," + std::to_string(p.j) +
                                      ") out of range for length " + std::to_string(n_));
            }
            if (partner[p.i] != 0 || partner[p.j] != 0) {
                throw ValidationError("position paired twice in pair (" + std::to_string(p.i) +
                                      "," + std::to_string(p.j) + ")");
            }
            partner[p.i] = p.j;
            partner[p.j] = p.i;
        }
        // A matching is planar iff a single left-to-right stack pass closes every pair.
        std::vector<int> open;
        for (int pos = 1; pos <= static_cast<int>(n_); ++pos) {
            const int q = partner[pos];
            if (q == 0) continue;
            if (q > pos) {
                open.push_back(pos);
            } else {
                if (open.empty() || open.back() != q) {
                    throw ValidationError("crossing pairs involving (" + std::to_string(q) + "," +
                                          std::to_string(pos) + ")");
                }
                open.pop_back();
            }
        }
    }

    std::size_t length() const { return n_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    const std::vector<BasePair>& pairs() const { return pairs_; }

    /// partner[pos] for pos in 1..n, 0 when unpaired; index 0 unused.
    std::vector<int> partner_table() const {
        std::vector<int> partner(n_ + 1, 0);
        for (const auto& p : pairs_) {
            partner[p.i] = p.j;
            partner[p.j] = p.i;
        }
        return partner;
    }

    friend bool operator==(const PairSet&, const PairSet&) = default;

   private:
    std::size_t n_ = 0;
    std::vector<BasePair> pairs_;
};

inline PairSet parse_dot_bracket(std::string_view text) {
    std::vector<BasePair> pairs;
    std::vector<int> open;
    for (std::size_t k = 0; k < text.size(); ++k) {
        const int pos = static_cast<int>(k) + 1;
        switch (text[k]) {
            case '.':
                break;
            case '(':
                open.push_back(pos);
                break;
            case ')':
                if (open.empty()) {
                    throw ValidationError("unbalanced ')' at position " + std::to_string(pos));
                }
                pairs.push_back({open.back(), pos});
                open.pop_back();
                break;
            default:
                throw ValidationError("invalid dot-bracket character '" + std::string(1, text[k]) +
                                      "' at position " + std::to_string(pos));
        }
    }
    if (!open.empty()) {
        throw ValidationError("unbalanced '(' at position " + std::to_string(open.back()));
    }
    return PairSet(text.size(), std::move(pairs));
}

inline std::string render_dot_bracket(const PairSet& pairs) {
    std::string out(pairs.length(), '.');
    for (const auto& p : pairs.pairs()) {
        out[static_cast<std::size_t>(p.i - 1)] = '(';
        out[static_cast<std::size_t>(p.j - 1)] = ')';
    }
    return out;
}

}  // namespace mrnaco
