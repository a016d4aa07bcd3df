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

#include "sni/pauli.h"

#include <bit>

#include "sni/errors.h"

namespace sni {

namespace {

constexpr uint8_t kCodeFromBits[4] = {0, 1, 3, 2};  // index x + 2z -> letter code
constexpr uint8_t kXFromCode[4] = {0, 1, 1, 0};
constexpr uint8_t kZFromCode[4] = {0, 0, 1, 1};

}  // namespace

char letter_char(Letter l) {
    return "IXYZ"[(int)l];
}

PauliString::PauliString(size_t n) : n_((uint8_t)n) {
    if (n > kMaxQubits) {
        throw DimensionError("Pauli strings are limited to 32 qubits");
    }
}

PauliString PauliString::from_text(std::string_view text) {
    PauliString result(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        switch (text[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                result.set(q, Letter::X);
                break;
            case 'Y':
                result.set(q, Letter::Y);
                break;
            case 'Z':
                result.set(q, Letter::Z);
                break;
            default:
                throw DomainError("bad Pauli character '" + std::string(1, text[q]) + "' in \"" +
                                  std::string(text) + "\"");
        }
    }
    return result;
}

PauliString PauliString::from_bits(size_t n, uint64_t x, uint64_t z) {
    PauliString result(n);
    uint64_t mask = n == 64 ? ~0ULL : ((1ULL << n) - 1);
    if ((x | z) & ~mask) {
        throw DimensionError("Pauli bits outside of qubit range");
    }
    result.x_ = x;
    result.z_ = z;
    return result;
}

PauliString PauliString::from_index(size_t n, uint64_t index) {
    PauliString result(n);
    for (size_t q = 0; q < n; q++) {
        uint8_t code = index & 3;
        index >>= 2;
        result.x_ |= (uint64_t)kXFromCode[code] << q;
        result.z_ |= (uint64_t)kZFromCode[code] << q;
    }
    if (index != 0) {
        throw DimensionError("Pauli index out of range");
    }
    return result;
}

PauliString PauliString::single(size_t n, size_t q, Letter l) {
    PauliString result(n);
    result.set(q, l);
    return result;
}

Letter PauliString::letter(size_t q) const {
    return (Letter)kCodeFromBits[((x_ >> q) & 1) | (((z_ >> q) & 1) << 1)];
}

void PauliString::set(size_t q, Letter l) {
    if (q >= n_) {
        throw DimensionError("qubit index out of range");
    }
    uint64_t bit = 1ULL << q;
    x_ = (x_ & ~bit) | ((uint64_t)kXFromCode[(int)l] << q);
    z_ = (z_ & ~bit) | ((uint64_t)kZFromCode[(int)l] << q);
}

size_t PauliString::weight() const {
    return std::popcount(x_ | z_);
}

uint64_t PauliString::index() const {
    uint64_t result = 0;
    for (size_t q = n_; q-- > 0;) {
        result = (result << 2) | (uint64_t)letter(q);
    }
    return result;
}

bool PauliString::commutes_with(const PauliString &other) const {
    if (n_ != other.n_) {
        throw DimensionError("commutation check between different sizes");
    }
    return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
}

std::string PauliString::str() const {
    std::string result(n_, 'I');
    for (size_t q = 0; q < n_; q++) {
        result[q] = letter_char(letter(q));
    }
    return result;
}

PauliString PauliString::restricted(std::span<const size_t> positions) const {
    PauliString result(positions.size());
    for (size_t k = 0; k < positions.size(); k++) {
        if (positions[k] >= n_) {
            throw DimensionError("restriction position out of range");
        }
        result.x_ |= ((x_ >> positions[k]) & 1) << k;
        result.z_ |= ((z_ >> positions[k]) & 1) << k;
    }
    return result;
}

PauliString PauliString::embedded(size_t n, std::span<const size_t> positions) const {
    if (positions.size() != n_) {
        throw DimensionError("embedding needs one position per qubit");
    }
    PauliString result(n);
    for (size_t k = 0; k < n_; k++) {
        if (positions[k] >= n) {
            throw DimensionError("embedding position out of range");
        }
        result.x_ |= ((x_ >> k) & 1) << positions[k];
        result.z_ |= ((z_ >> k) & 1) << positions[k];
    }
    return result;
}

PauliString &PauliString::operator*=(const PauliString &other) {
    if (n_ != other.n_) {
        throw DimensionError("Pauli product between " + std::to_string(n_) + " and " + std::to_string(other.n_) +
                             " qubits");
    }
    x_ ^= other.x_;
    z_ ^= other.z_;
    return *this;
}

bool PauliString::operator<(const PauliString &other) const {
    if (n_ != other.n_) {
        return n_ < other.n_;
    }
    return index() < other.index();
}

PauliString pauli_product(const PauliString &a, const PauliString &b) {
    PauliString result = a;
    result *= b;
    return result;
}

PauliString operator*(const PauliString &a, const PauliString &b) {
    return pauli_product(a, b);
}

SpacetimeLayout::SpacetimeLayout(std::vector<LayoutEntry> entries) : entries_(std::move(entries)) {
    offsets_.reserve(entries_.size());
    for (const auto &e : entries_) {
        offsets_.push_back(cell_count_);
        cell_count_ += e.slots;
    }
}

bool SpacetimeLayout::operator==(const SpacetimeLayout &other) const {
    if (entries_.size() != other.entries_.size()) {
        return false;
    }
    for (size_t k = 0; k < entries_.size(); k++) {
        const auto &a = entries_[k];
        const auto &b = other.entries_[k];
        if (a.kind != b.kind || a.slots != b.slots || a.support != b.support) {
            return false;
        }
    }
    return true;
}

SpacetimeError::SpacetimeError(std::shared_ptr<const SpacetimeLayout> layout) : layout_(std::move(layout)) {
    cells_.reserve(layout_->cell_count());
    for (const auto &e : layout_->entries()) {
        for (size_t j = 0; j < e.slots; j++) {
            cells_.emplace_back(e.support.size());
        }
    }
}

const PauliString &SpacetimeError::cell(size_t entry, size_t slot) const {
    if (entry >= layout_->kind_count() || slot >= layout_->entries()[entry].slots) {
        throw DimensionError("spacetime cell out of range");
    }
    return cells_[layout_->offset(entry) + slot];
}

PauliString &SpacetimeError::cell(size_t entry, size_t slot) {
    if (entry >= layout_->kind_count() || slot >= layout_->entries()[entry].slots) {
        throw DimensionError("spacetime cell out of range");
    }
    return cells_[layout_->offset(entry) + slot];
}

bool SpacetimeError::is_nontrivial() const {
    for (const auto &c : cells_) {
        if (!c.is_identity()) {
            return true;
        }
    }
    return false;
}

void SpacetimeError::clear() {
    for (auto &c : cells_) {
        c = PauliString(c.size());
    }
}

SpacetimeError &SpacetimeError::operator*=(const SpacetimeError &other) {
    if (layout_ != other.layout_ && !(layout_ && other.layout_ && *layout_ == *other.layout_)) {
        throw DimensionError("spacetime product between different layouts");
    }
    for (size_t k = 0; k < cells_.size(); k++) {
        cells_[k] *= other.cells_[k];
    }
    return *this;
}

bool SpacetimeError::operator==(const SpacetimeError &other) const {
    return cells_ == other.cells_ && layout_ && other.layout_ && *layout_ == *other.layout_;
}

SpacetimeError spacetime_product(const SpacetimeError &a, const SpacetimeError &b) {
    SpacetimeError result = a;
    result *= b;
    return result;
}

}  // namespace sni
