#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dstore/types.hpp"

namespace dstore {

/// Systematic tau-of-tau splitting code: the D value bits are cut into tau
/// chunks of ceil(D/tau) bits, chunk 0 holding the most significant bits.
class CodingScheme {
public:
    CodingScheme(int tau, int d_bits);

    int tau() const noexcept { return tau_; }
    int d_bits() const noexcept { return d_bits_; }
    int n_blocks() const noexcept { return tau_; }
    int chunk_bits() const noexcept { return chunk_bits_; }
    std::size_t payload_bytes() const noexcept { return payload_bytes_; }

    std::vector<Block> encode(Value v) const;
    Block chunk(Value v, int position) const;

    /// Positions index into encode()'s output. Needs every position exactly
    /// once (repeats must agree). Throws DecodeFailure otherwise.
    Value decode(const std::vector<std::pair<int, Block>>& blocks) const;

    /// A full-value block (the replication code).
    Block replica(Value v) const;
    std::optional<Value> replica_value(const Block& b) const;

private:
    int tau_;
    int d_bits_;
    int chunk_bits_;
    std::size_t payload_bytes_;
};

}  // namespace dstore
