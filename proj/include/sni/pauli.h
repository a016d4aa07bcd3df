// Copyright 2026 The SNI-Sim Authors.
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

#ifndef SNI_PAULI_H
#define SNI_PAULI_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sni {

/// Single-qubit Pauli letter. The numeric codes are also the dense-index digits.
enum class Letter : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(Letter l);

/// Phase-free Pauli string on up to 32 qubits, stored as x and z bit masks (qubit q is bit q).
class PauliString {
   public:
    static constexpr size_t kMaxQubits = 32;

    PauliString() = default;
    explicit PauliString(size_t n);

    static PauliString identity(size_t n) {
        return PauliString(n);
    }
    /// Parses text such as "XIZY", qubit 0 leftmost. '_' is accepted for I.
    static PauliString from_text(std::string_view text);
    static PauliString from_bits(size_t n, uint64_t x, uint64_t z);
    /// Dense index with base-4 digit `letter(q)` at position q. Inverse of index().
    static PauliString from_index(size_t n, uint64_t index);
    static PauliString single(size_t n, size_t q, Letter l);

    size_t size() const {
        return n_;
    }
    uint64_t x_bits() const {
        return x_;
    }
    uint64_t z_bits() const {
        return z_;
    }
    Letter letter(size_t q) const;
    void set(size_t q, Letter l);
    bool is_identity() const {
        return (x_ | z_) == 0;
    }
    size_t weight() const;
    uint64_t index() const;
    bool commutes_with(const PauliString &other) const;
    std::string str() const;

    /// Letters at the given positions, in that order.
    PauliString restricted(std::span<const size_t> positions) const;
    /// Scatters this string's letters to positions of a larger string of size n.
    PauliString embedded(size_t n, std::span<const size_t> positions) const;

    PauliString &operator*=(const PauliString &other);
    bool operator==(const PauliString &other) const {
        return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
    }
    bool operator!=(const PauliString &other) const {
        return !(*this == other);
    }
    bool operator<(const PauliString &other) const;

   private:
    uint8_t n_ = 0;
    uint64_t x_ = 0;
    uint64_t z_ = 0;
};

/// Phase-free product. Throws DimensionError on size mismatch.
PauliString pauli_product(const PauliString &a, const PauliString &b);
PauliString operator*(const PauliString &a, const PauliString &b);

/// Symplectic sign (-1)^<s,t>: +1 if the strings commute.
inline int commutation_sign(const PauliString &s, const PauliString &t) {
    return s.commutes_with(t) ? 1 : -1;
}

struct PauliStringHash {
    size_t operator()(const PauliString &p) const {
        return std::hash<uint64_t>()(p.x_bits() * 0x9E3779B97F4A7C15ULL ^ p.z_bits() ^ ((uint64_t)p.size() << 58));
    }
};

/// One entry of a spacetime layout: an operation kind, its slot count and its noisy support.
struct LayoutEntry {
    size_t kind;
    size_t slots;
    std::vector<size_t> support;
};

/// Shape of a spacetime error: cells grouped by kind, each cell a Pauli on the kind's support.
class SpacetimeLayout {
   public:
    SpacetimeLayout() = default;
    explicit SpacetimeLayout(std::vector<LayoutEntry> entries);

    const std::vector<LayoutEntry> &entries() const {
        return entries_;
    }
    size_t kind_count() const {
        return entries_.size();
    }
    size_t cell_count() const {
        return cell_count_;
    }
    /// Flat offset of the first cell of entry e.
    size_t offset(size_t e) const {
        return offsets_[e];
    }
    bool operator==(const SpacetimeLayout &other) const;

   private:
    std::vector<LayoutEntry> entries_;
    std::vector<size_t> offsets_;
    size_t cell_count_ = 0;
};

/// One Pauli per (kind, slot) cell.
class SpacetimeError {
   public:
    SpacetimeError() = default;
    explicit SpacetimeError(std::shared_ptr<const SpacetimeLayout> layout);

    const SpacetimeLayout &layout() const {
        return *layout_;
    }
    const std::shared_ptr<const SpacetimeLayout> &layout_ptr() const {
        return layout_;
    }

    const PauliString &cell(size_t entry, size_t slot) const;
    PauliString &cell(size_t entry, size_t slot);
    std::span<const PauliString> cells() const {
        return cells_;
    }
    std::span<PauliString> cells() {
        return cells_;
    }

    bool is_nontrivial() const;
    void clear();
    /// Entry-wise product in place. Throws DimensionError on layout mismatch.
    SpacetimeError &operator*=(const SpacetimeError &other);
    bool operator==(const SpacetimeError &other) const;

   private:
    std::shared_ptr<const SpacetimeLayout> layout_;
    std::vector<PauliString> cells_;
};

SpacetimeError spacetime_product(const SpacetimeError &a, const SpacetimeError &b);

inline bool is_nontrivial(const SpacetimeError &s) {
    return s.is_nontrivial();
}

}  // namespace sni

#endif
