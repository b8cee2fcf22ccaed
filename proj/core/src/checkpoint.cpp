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

#include "dqtrl/checkpoint.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "dqtrl/errors.hpp"

namespace dqtrl {

namespace {

constexpr const char* kMagic = "dqtrl-checkpoint";

void put_le(std::string& out, double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) {
        out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFFU));
    }
}

double get_le(const char* p) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[b])) << (8 * b);
    }
    return std::bit_cast<double>(bits);
}

template <typename T>
T parse_number(const std::map<std::string, std::string>& fields, const std::string& key) {
    const auto it = fields.find(key);
    if (it == fields.end()) {
        throw LoadError("checkpoint header is missing '" + key + "'");
    }
    std::istringstream in(it->second);
    T value{};
    in >> value;
    if (!in || !in.eof()) {
        throw LoadError("checkpoint header field '" + key + "' is not a number: " + it->second);
    }
    return value;
}

} // namespace

double wrap_angle(double x) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    return r >= kTwoPi ? 0.0 : r;
}

std::size_t Checkpoint::expected_count() const {
    if (topology.inputs == 0 || topology.hidden == 0 || topology.actions == 0) {
        throw LoadError("checkpoint topology has a zero-width layer");
    }
    if (generated != topology.num_params()) {
        throw LoadError("k = " + std::to_string(generated) + " does not match the policy topology (" +
                        std::to_string(topology.num_params()) + " weights)");
    }
    if (!is_quantum()) {
        if (qubits != 0 || blocks != 0) {
            throw LoadError("classical checkpoint must have n = L = 0");
        }
        return generated;
    }
    try {
        qt_shape().validate();
    } catch (const Error& e) {
        throw LoadError(std::string("invalid quantum shape in checkpoint: ") + e.what());
    }
    return qt_shape().num_trainable();
}

void Checkpoint::validate() const {
    const std::size_t expected = expected_count();
    if (params.size() != expected) {
        throw LoadError("checkpoint holds " + std::to_string(params.size()) +
                        " values, header implies " + std::to_string(expected));
    }
}

std::string header_line(const Checkpoint& c) {
    std::ostringstream out;
    out << kMagic << ' ' << Checkpoint::kVersion << " mode=" << to_string(c.mode)
        << " n=" << c.qubits << " L=" << c.blocks << " k=" << c.generated
        << " inputs=" << c.topology.inputs << " hidden=" << c.topology.hidden
        << " actions=" << c.topology.actions << " activation=" << to_string(c.topology.activation)
        << " seed=" << c.seed << " count=" << c.params.size();
    return out.str();
}

std::string serialize_checkpoint(const Checkpoint& ckpt) {
    ckpt.validate();
    std::string out = header_line(ckpt);
    out.push_back('\n');
    out.reserve(out.size() + 8 * ckpt.params.size());
    const std::size_t angles = ckpt.is_quantum() ? ckpt.qt_shape().num_angles() : 0;
    for (std::size_t i = 0; i < ckpt.params.size(); ++i) {
        put_le(out, i < angles ? wrap_angle(ckpt.params[i]) : ckpt.params[i]);
    }
    return out;
}

Checkpoint deserialize_checkpoint(const std::string& bytes) {
    const auto newline = bytes.find('\n');
    if (newline == std::string::npos) {
        throw LoadError("checkpoint has no header line");
    }
    std::istringstream header(bytes.substr(0, newline));
    std::string magic;
    int version = 0;
    header >> magic >> version;
    if (magic != kMagic) {
        throw LoadError("not a dqtrl checkpoint");
    }
    if (version != Checkpoint::kVersion) {
        throw LoadError("unsupported checkpoint version " + std::to_string(version));
    }
    std::map<std::string, std::string> fields;
    std::string token;
    while (header >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            throw LoadError("malformed header token '" + token + "'");
        }
        fields[token.substr(0, eq)] = token.substr(eq + 1);
    }

    Checkpoint c;
    try {
        c.mode = parse_mode(fields.count("mode") ? fields.at("mode") : "");
        c.topology.activation =
            parse_activation(fields.count("activation") ? fields.at("activation") : "");
    } catch (const ConfigError& e) {
        throw LoadError(e.what());
    }
    c.qubits = parse_number<int>(fields, "n");
    c.blocks = parse_number<int>(fields, "L");
    c.generated = parse_number<std::size_t>(fields, "k");
    c.topology.inputs = parse_number<std::size_t>(fields, "inputs");
    c.topology.hidden = parse_number<std::size_t>(fields, "hidden");
    c.topology.actions = parse_number<std::size_t>(fields, "actions");
    c.seed = parse_number<std::uint64_t>(fields, "seed");
    const auto count = parse_number<std::size_t>(fields, "count");

    // Dimensions are checked before the payload is touched.
    if (count != c.expected_count()) {
        throw LoadError("checkpoint count " + std::to_string(count) + " disagrees with header shape (" +
                        std::to_string(c.expected_count()) + ")");
    }
    const std::size_t payload = bytes.size() - newline - 1;
    if (payload != 8 * count) {
        throw LoadError("checkpoint payload is " + std::to_string(payload) + " bytes, expected " +
                        std::to_string(8 * count));
    }
    c.params.resize(count);
    const char* p = bytes.data() + newline + 1;
    for (std::size_t i = 0; i < count; ++i) {
        c.params[i] = get_le(p + 8 * i);
    }
    return c;
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
    const std::string bytes = serialize_checkpoint(ckpt);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error("failed writing checkpoint '" + path + "'");
    }
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw LoadError("cannot open checkpoint '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return deserialize_checkpoint(buffer.str());
}

} // namespace dqtrl
