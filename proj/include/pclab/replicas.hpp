#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pclab/rng.hpp"

namespace pclab {

//! Per-replica rows with named columns, kept in replica order.
struct SampleSet
{
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t size() const noexcept { return rows.size(); }
    std::vector<double> column(const std::string& name) const;
};

//! One replica: draws from the given stream, returns one value per column.
using ReplicaFn = std::function<std::vector<double>(Stream&)>;

//! Replica r always draws from Stream(seed).split(r).
Stream replica_stream(std::uint64_t seed, std::uint64_t replica);

//! Reference implementation: replicas one after another.
SampleSet run_replicas_serial(const ReplicaFn& fn, std::vector<std::string> columns,
                              std::size_t replicas, std::uint64_t seed);

/*!
 * OpenMP replica loop. Output is byte-identical to the serial path for any
 * worker count: streams depend only on (seed, replica) and rows are stored
 * by replica index. workers = 0 uses the OpenMP default.
 */
SampleSet run_replicas(const ReplicaFn& fn, std::vector<std::string> columns,
                       std::size_t replicas, std::uint64_t seed, std::size_t workers = 0);

//! Single-column convenience wrapper.
std::vector<double> replicate(const std::function<double(Stream&)>& fn, std::size_t replicas,
                              std::uint64_t seed, std::size_t workers = 0);

}  // namespace pclab
