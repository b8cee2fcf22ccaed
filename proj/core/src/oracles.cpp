// Copyright 2026 The dqtrl Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dqtrl/oracles.hpp"

#include <cmath>

#include "dqtrl/errors.hpp"

namespace dqtrl::oracle {

namespace {

using C = std::complex<double>;

DenseMatrix from_rows(std::initializer_list<std::initializer_list<C>> rows) {
    DenseMatrix m;
    m.dim = rows.size();
    for (const auto& row : rows) {
        m.data.insert(m.data.end(), row.begin(), row.end());
    }
    return m;
}

} // namespace

DenseMatrix identity(std::size_t dim) {
    DenseMatrix m{dim, std::vector<C>(dim * dim, C{0.0, 0.0})};
    for (std::size_t i = 0; i < dim; ++i) {
        m.at(i, i) = 1.0;
    }
    return m;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim != b.dim) {
        throw DimensionError("oracle matrix sizes differ");
    }
    DenseMatrix out{a.dim, std::vector<C>(a.dim * a.dim, C{0.0, 0.0})};
    for (std::size_t r = 0; r < a.dim; ++r) {
        for (std::size_t k = 0; k < a.dim; ++k) {
            const C ark = a.at(r, k);
            if (ark == C{0.0, 0.0}) {
                continue;
            }
            for (std::size_t c = 0; c < a.dim; ++c) {
                out.at(r, c) += ark * b.at(k, c);
            }
        }
    }
    return out;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out{a.dim * b.dim, std::vector<C>(a.dim * b.dim * a.dim * b.dim)};
    for (std::size_t ar = 0; ar < a.dim; ++ar) {
        for (std::size_t ac = 0; ac < a.dim; ++ac) {
            for (std::size_t br = 0; br < b.dim; ++br) {
                for (std::size_t bc = 0; bc < b.dim; ++bc) {
                    out.at(ar * b.dim + br, ac * b.dim + bc) = a.at(ar, ac) * b.at(br, bc);
                }
            }
        }
    }
    return out;
}

DenseMatrix u3_by_rotations(double theta, double phi, double lambda) {
    const C i{0.0, 1.0};
    auto rz = [&](double a) {
        return from_rows({{std::exp(-i * (a / 2.0)), 0.0}, {0.0, std::exp(i * (a / 2.0))}});
    };
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const DenseMatrix ry = from_rows({{c, -s}, {s, c}});
    DenseMatrix u = multiply(rz(phi), multiply(ry, rz(lambda)));
    const C phase = std::exp(i * ((phi + lambda) / 2.0));
    for (auto& z : u.data) {
        z *= phase;
    }
    return u;
}

DenseMatrix embed_single(const DenseMatrix& gate, int qubit, int num_qubits) {
    DenseMatrix full = identity(1);
    for (int q = 0; q < num_qubits; ++q) {
        full = kron(full, q == qubit ? gate : identity(2));
    }
    return full;
}

DenseMatrix cnot_matrix(int control, int target, int num_qubits) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    DenseMatrix m{dim, std::vector<C>(dim * dim, C{0.0, 0.0})};
    for (std::size_t col = 0; col < dim; ++col) {
        // Read bits MSB-first so that qubit q is bit (n - 1 - q).
        std::vector<int> bits(num_qubits);
        for (int q = 0; q < num_qubits; ++q) {
            bits[q] = static_cast<int>((col >> (num_qubits - 1 - q)) & 1U);
        }
        if (bits[control] == 1) {
            bits[target] ^= 1;
        }
        std::size_t row = 0;
        for (int q = 0; q < num_qubits; ++q) {
            row = (row << 1) | static_cast<std::size_t>(bits[q]);
        }
        m.at(row, col) = 1.0;
    }
    return m;
}

DenseMatrix ansatz_unitary(const AnsatzShape& shape, std::span<const double> angles) {
    if (angles.size() != shape.num_angles()) {
        throw DimensionError("oracle: wrong angle count");
    }
    const int n = shape.qubits;
    DenseMatrix u = identity(std::size_t{1} << n);
    for (int b = 0; b < shape.blocks; ++b) {
        for (int q = 0; q < n; ++q) {
            const std::size_t o = 3 * (static_cast<std::size_t>(b) * n + q);
            const DenseMatrix g = u3_by_rotations(angles[o], angles[o + 1], angles[o + 2]);
            u = multiply(embed_single(g, q, n), u);
        }
        if (n > 1) {
            for (int q = 0; q < n; ++q) {
                u = multiply(cnot_matrix(q, (q + 1) % n, n), u);
            }
        }
    }
    return u;
}

std::vector<std::complex<double>> ansatz_state(const AnsatzShape& shape,
                                               std::span<const double> angles) {
    const DenseMatrix u = ansatz_unitary(shape, angles);
    std::vector<C> state(u.dim);
    for (std::size_t r = 0; r < u.dim; ++r) {
        state[r] = u.at(r, 0);
    }
    return state;
}

double map_forward(int qubits, std::span<const double> beta, std::size_t basis_index,
                   double raw_prob) {
    const std::size_t width = static_cast<std::size_t>(qubits) + 1;
    std::vector<double> x;
    for (int pos = qubits - 1; pos >= 0; --pos) {
        x.push_back(((basis_index >> pos) & 1U) ? 1.0 : -1.0);
    }
    x.push_back(std::pow(2.0, qubits) * raw_prob);

    std::size_t cursor = 0;
    auto dense = [&](const std::vector<double>& in, std::size_t out_dim, bool squash) {
        std::vector<double> weights(beta.begin() + cursor,
                                    beta.begin() + cursor + out_dim * in.size());
        cursor += out_dim * in.size();
        std::vector<double> out(out_dim);
        for (std::size_t o = 0; o < out_dim; ++o) {
            double z = beta[cursor + o];
            for (std::size_t i = 0; i < in.size(); ++i) {
                z += weights[o * in.size() + i] * in[i];
            }
            out[o] = squash ? std::tanh(z) : z;
        }
        cursor += out_dim;
        return out;
    };
    if (beta.size() != width * 10 + 10 + 100 + 10 + 10 + 1) {
        throw DimensionError("oracle: wrong mapping parameter count");
    }
    const auto h1 = dense(x, 10, true);
    const auto h2 = dense(h1, 10, true);
    return dense(h2, 1, false)[0];
}

std::vector<double> policy_forward(const PolicyTopology& t, std::span<const double> theta,
                                   std::span<const double> obs) {
    const PolicyLayers layers = unpack(t, theta);
    std::vector<double> hidden(t.hidden);
    for (std::size_t j = 0; j < t.hidden; ++j) {
        double z = layers.b1[j];
        for (std::size_t i = 0; i < t.inputs; ++i) {
            z += layers.w1[j * t.inputs + i] * obs[i];
        }
        hidden[j] = t.activation == Activation::kTanh ? std::tanh(z) : (z > 0.0 ? z : 0.0);
    }
    std::vector<double> logits(t.actions);
    for (std::size_t a = 0; a < t.actions; ++a) {
        double z = layers.b2[a];
        for (std::size_t j = 0; j < t.hidden; ++j) {
            z += layers.w2[a * t.hidden + j] * hidden[j];
        }
        logits[a] = z;
    }
    double m = logits[0];
    for (double z : logits) {
        m = std::max(m, z);
    }
    double lse = 0.0;
    for (double z : logits) {
        lse += std::exp(z - m);
    }
    lse = m + std::log(lse);
    std::vector<double> probs(t.actions);
    for (std::size_t a = 0; a < t.actions; ++a) {
        probs[a] = std::exp(logits[a] - lse);
    }
    return probs;
}

std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> x, double eps) {
    std::vector<double> probe(x.begin(), x.end());
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + eps;
        const double plus = f(probe);
        probe[i] = x[i] - eps;
        const double minus = f(probe);
        probe[i] = x[i];
        grad[i] = (plus - minus) / (2.0 * eps);
    }
    return grad;
}

} // namespace dqtrl::oracle
