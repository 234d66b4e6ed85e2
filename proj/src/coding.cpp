#include "dstore/coding.hpp"

#include <string>

namespace dstore {

namespace {

Bytes to_bytes(std::uint64_t x, std::size_t n) {
    Bytes b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>(x >> (8 * i));
    return b;
}

std::optional<std::uint64_t> from_bytes(const Bytes& b, std::size_t n) {
    if (b.size() != n) return std::nullopt;
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < n; ++i) x |= std::uint64_t{b[i]} << (8 * i);
    return x;
}

std::size_t bytes_for(int bits) { return bits <= 8 ? 1 : static_cast<std::size_t>((bits + 7) / 8); }

}  // namespace

CodingScheme::CodingScheme(int tau, int d_bits)
    : tau_(tau), d_bits_(d_bits), chunk_bits_((d_bits + tau - 1) / tau), payload_bytes_(bytes_for(chunk_bits_)) {
    if (tau < 1 || d_bits < 1 || d_bits > 31)
        throw Error(ErrorKind::InvalidParams, "coding needs tau >= 1 and 1 <= D <= 31");
}

Block CodingScheme::chunk(Value v, int position) const {
    const int shift = chunk_bits_ * (tau_ - 1 - position);
    const std::uint64_t mask = (std::uint64_t{1} << chunk_bits_) - 1;
    return {to_bytes((std::uint64_t{v} >> shift) & mask, payload_bytes_)};
}

std::vector<Block> CodingScheme::encode(Value v) const {
    std::vector<Block> out;
    out.reserve(tau_);
    for (int i = 0; i < tau_; ++i) out.push_back(chunk(v, i));
    return out;
}

Value CodingScheme::decode(const std::vector<std::pair<int, Block>>& blocks) const {
    std::vector<std::optional<std::uint64_t>> parts(tau_);
    for (const auto& [pos, block] : blocks) {
        if (pos < 0 || pos >= tau_) throw Error(ErrorKind::DecodeFailure, "position out of range");
        auto x = from_bytes(block.payload, payload_bytes_);
        if (!x || *x >> chunk_bits_) throw Error(ErrorKind::DecodeFailure, "malformed chunk");
        if (parts[pos] && *parts[pos] != *x) throw Error(ErrorKind::DecodeFailure, "conflicting chunks");
        parts[pos] = x;
    }
    std::uint64_t v = 0;
    for (int i = 0; i < tau_; ++i) {
        if (!parts[i]) throw Error(ErrorKind::DecodeFailure, "missing chunk " + std::to_string(i));
        v = (v << chunk_bits_) | *parts[i];
    }
    if (v >> d_bits_) throw Error(ErrorKind::DecodeFailure, "decoded value outside the domain");
    return static_cast<Value>(v);
}

Block CodingScheme::replica(Value v) const { return {to_bytes(v, bytes_for(d_bits_))}; }

std::optional<Value> CodingScheme::replica_value(const Block& b) const {
    auto x = from_bytes(b.payload, bytes_for(d_bits_));
    if (!x || *x >> d_bits_) return std::nullopt;
    return static_cast<Value>(*x);
}

}  // namespace dstore
