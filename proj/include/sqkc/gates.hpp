// Copyright 2026 The SQKC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Gate descriptions and their in-place application to a StateVector.
 *
 * Every gate is a (possibly multi-controlled) unitary on an ordered list of
 * target qubits. Application walks the amplitude array once, visiting each
 * block of 2^k amplitudes whose control bits match, so multi-controlled
 * gates never build a full-register matrix.
 */
#pragma once

#include "errors.hpp"
#include "state_vector.hpp"
#include "tolerance.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace sqkc {

/// Square complex matrix, row-major.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    Matrix(std::size_t dim, std::vector<Complex> data) : dim_(dim), data_(std::move(data)) {
        detail::require(data_.size() == dim_ * dim_, "matrix data does not match its dimension");
    }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    [[nodiscard]] Matrix adjoint() const {
        Matrix m(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                m(c, r) = std::conj((*this)(r, c));
            }
        }
        return m;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        detail::require(a.dim_ == b.dim_, "matrix dimensions differ");
        Matrix m(a.dim_);
        for (std::size_t r = 0; r < a.dim_; ++r) {
            for (std::size_t k = 0; k < a.dim_; ++k) {
                const Complex v = a(r, k);
                if (v == Complex{}) {
                    continue;
                }
                for (std::size_t c = 0; c < a.dim_; ++c) {
                    m(r, c) += v * b(k, c);
                }
            }
        }
        return m;
    }

    /// Max-entry deviation of U U^dagger from the identity.
    [[nodiscard]] double unitarity_error() const {
        const Matrix p = (*this) * adjoint();
        double err = 0.0;
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                err = std::max(err, std::abs(p(r, c) - (r == c ? Complex{1.0} : Complex{})));
            }
        }
        return err;
    }

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

enum class GateKind { H, X, Z, RY, SWAP, QFT, QFT_INVERSE, UNITARY };

struct Control {
    std::size_t qubit;
    int polarity = 1; ///< gate fires when the control reads this value
};

struct GateSpec {
    GateKind kind = GateKind::X;
    std::vector<std::size_t> targets;
    std::vector<Control> controls;
    double angle = 0.0; ///< RY only
    Matrix matrix;      ///< UNITARY only; acts on `targets` with targets[0] as the low bit

    /// Copy with an additional control.
    [[nodiscard]] GateSpec controlled_by(std::size_t qubit, int polarity = 1) const {
        GateSpec g = *this;
        g.controls.push_back({qubit, polarity});
        return g;
    }
};

namespace gates {
inline GateSpec h(std::size_t q) { return {GateKind::H, {q}, {}, 0.0, {}}; }
inline GateSpec x(std::size_t q) { return {GateKind::X, {q}, {}, 0.0, {}}; }
inline GateSpec z(std::size_t q) { return {GateKind::Z, {q}, {}, 0.0, {}}; }
inline GateSpec ry(std::size_t q, double angle) { return {GateKind::RY, {q}, {}, angle, {}}; }
inline GateSpec swap(std::size_t a, std::size_t b) { return {GateKind::SWAP, {a, b}, {}, 0.0, {}}; }
inline GateSpec cnot(std::size_t control, std::size_t target) { return x(target).controlled_by(control); }
inline GateSpec qft(std::vector<std::size_t> reg) { return {GateKind::QFT, std::move(reg), {}, 0.0, {}}; }
inline GateSpec qft_inverse(std::vector<std::size_t> reg) {
    return {GateKind::QFT_INVERSE, std::move(reg), {}, 0.0, {}};
}
inline GateSpec unitary(Matrix m, std::vector<std::size_t> targets) {
    return {GateKind::UNITARY, std::move(targets), {}, 0.0, std::move(m)};
}
/// Z on `target` controlled on all of `controls` being 1.
inline GateSpec mcz(std::size_t target, const std::vector<std::size_t> &controls) {
    GateSpec g = z(target);
    for (auto c : controls) {
        g.controls.push_back({c, 1});
    }
    return g;
}
} // namespace gates

/// Matrix of the gate on its targets (controls excluded).
inline Matrix gate_matrix(const GateSpec &g) {
    constexpr double r = std::numbers::sqrt2 / 2.0;
    switch (g.kind) {
    case GateKind::H:
        return Matrix(2, {r, r, r, -r});
    case GateKind::X:
        return Matrix(2, {0.0, 1.0, 1.0, 0.0});
    case GateKind::Z:
        return Matrix(2, {1.0, 0.0, 0.0, -1.0});
    case GateKind::RY: {
        const double c = std::cos(g.angle / 2.0);
        const double s = std::sin(g.angle / 2.0);
        return Matrix(2, {c, -s, s, c});
    }
    case GateKind::SWAP: {
        Matrix m(4);
        m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
        return m;
    }
    case GateKind::QFT:
    case GateKind::QFT_INVERSE: {
        const std::size_t dim = std::size_t{1} << g.targets.size();
        const double sign = g.kind == GateKind::QFT ? 1.0 : -1.0;
        const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
        Matrix m(dim);
        for (std::size_t y = 0; y < dim; ++y) {
            for (std::size_t k = 0; k < dim; ++k) {
                const double phase = sign * 2.0 * std::numbers::pi * static_cast<double>((y * k) % dim) /
                                     static_cast<double>(dim);
                m(y, k) = std::polar(scale, phase);
            }
        }
        return m;
    }
    case GateKind::UNITARY:
        return g.matrix;
    }
    return {};
}

/// Throws InvalidArgument unless `g` is well formed for an `n_qubits` register.
inline void validate(const GateSpec &g, std::size_t n_qubits) {
    detail::require(!g.targets.empty(), "gate has no targets");
    std::vector<bool> used(n_qubits, false);
    auto claim = [&](std::size_t q) {
        if (q >= n_qubits) {
            throw InvalidArgument("gate qubit " + std::to_string(q) + " out of range for " +
                                  std::to_string(n_qubits) + "-qubit state");
        }
        if (used[q]) {
            throw InvalidArgument("gate qubit " + std::to_string(q) + " used twice");
        }
        used[q] = true;
    };
    for (auto q : g.targets) {
        claim(q);
    }
    for (const auto &c : g.controls) {
        claim(c.qubit);
        detail::require(c.polarity == 0 || c.polarity == 1, "control polarity must be 0 or 1");
    }
    switch (g.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::RY:
        detail::require(g.targets.size() == 1, "single-qubit gate needs exactly one target");
        break;
    case GateKind::SWAP:
        detail::require(g.targets.size() == 2, "SWAP needs exactly two targets");
        break;
    case GateKind::QFT:
    case GateKind::QFT_INVERSE:
        break;
    case GateKind::UNITARY:
        if (g.matrix.dim() != (std::size_t{1} << g.targets.size())) {
            throw InvalidArgument("UNITARY matrix dimension does not match target count");
        }
        if (g.matrix.unitarity_error() > tol::kExact) {
            throw InvalidArgument("UNITARY matrix is not unitary");
        }
        break;
    }
}

/// Inverse of a single gate.
inline GateSpec adjoint(const GateSpec &g) {
    GateSpec a = g;
    switch (g.kind) {
    case GateKind::RY:
        a.angle = -g.angle;
        break;
    case GateKind::QFT:
        a.kind = GateKind::QFT_INVERSE;
        break;
    case GateKind::QFT_INVERSE:
        a.kind = GateKind::QFT;
        break;
    case GateKind::UNITARY:
        a.matrix = g.matrix.adjoint();
        break;
    default:
        break;
    }
    return a;
}

namespace detail {

struct Masks {
    std::size_t target = 0;
    std::size_t control = 0;
    std::size_t control_value = 0;
};

inline Masks masks_of(const GateSpec &g) {
    Masks m;
    for (auto q : g.targets) {
        m.target |= std::size_t{1} << q;
    }
    for (const auto &c : g.controls) {
        m.control |= std::size_t{1} << c.qubit;
        if (c.polarity == 1) {
            m.control_value |= std::size_t{1} << c.qubit;
        }
    }
    return m;
}

/// Runs `fn(base)` for every index with all target bits clear and the
/// control bits matching.
template <class Fn> void for_each_block(std::size_t size, const Masks &m, Fn &&fn) {
    for (std::size_t i = 0; i < size; ++i) {
        if ((i & m.target) != 0 || (i & m.control) != m.control_value) {
            continue;
        }
        fn(i);
    }
}

} // namespace detail

/// Applies `g` to `state` in place. Validates the gate first.
inline void apply(StateVector &state, const GateSpec &g) {
    validate(g, state.n_qubits());
    auto amps = state.amplitudes();
    const auto m = detail::masks_of(g);

    switch (g.kind) {
    case GateKind::X: {
        const std::size_t bit = std::size_t{1} << g.targets[0];
        detail::for_each_block(amps.size(), m, [&](std::size_t i) { std::swap(amps[i], amps[i | bit]); });
        return;
    }
    case GateKind::Z: {
        const std::size_t bit = std::size_t{1} << g.targets[0];
        detail::for_each_block(amps.size(), m, [&](std::size_t i) { amps[i | bit] = -amps[i | bit]; });
        return;
    }
    case GateKind::SWAP: {
        const std::size_t a = std::size_t{1} << g.targets[0];
        const std::size_t b = std::size_t{1} << g.targets[1];
        detail::for_each_block(amps.size(), m, [&](std::size_t i) { std::swap(amps[i | a], amps[i | b]); });
        return;
    }
    default:
        break;
    }

    const Matrix u = gate_matrix(g);
    const std::size_t dim = u.dim();
    std::vector<std::size_t> offsets(dim, 0);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t b = 0; b < g.targets.size(); ++b) {
            if ((j >> b) & 1U) {
                offsets[j] |= std::size_t{1} << g.targets[b];
            }
        }
    }
    std::vector<Complex> in(dim);
    detail::for_each_block(amps.size(), m, [&](std::size_t base) {
        for (std::size_t j = 0; j < dim; ++j) {
            in[j] = amps[base | offsets[j]];
        }
        for (std::size_t r = 0; r < dim; ++r) {
            Complex acc{};
            for (std::size_t c = 0; c < dim; ++c) {
                acc += u(r, c) * in[c];
            }
            amps[base | offsets[r]] = acc;
        }
    });
}

/// Value-returning form of apply().
inline StateVector applied(StateVector state, const GateSpec &g) {
    apply(state, g);
    return state;
}

/// Ordered gate list.
using Circuit = std::vector<GateSpec>;

inline void run(StateVector &state, const Circuit &circuit) {
    for (const auto &g : circuit) {
        apply(state, g);
    }
}

inline Circuit inverse(const Circuit &circuit) {
    Circuit out;
    out.reserve(circuit.size());
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
        out.push_back(adjoint(*it));
    }
    return out;
}

inline Circuit controlled(const Circuit &circuit, std::size_t qubit, int polarity = 1) {
    Circuit out;
    out.reserve(circuit.size());
    for (const auto &g : circuit) {
        out.push_back(g.controlled_by(qubit, polarity));
    }
    return out;
}

inline void append(Circuit &dst, const Circuit &src) { dst.insert(dst.end(), src.begin(), src.end()); }

} // namespace sqkc
