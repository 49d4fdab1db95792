#include "pclab/replicas.hpp"

#include <algorithm>
#include <exception>

#include <omp.h>

#include "pclab/error.hpp"

namespace pclab {

std::vector<double> SampleSet::column(const std::string& name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    require(it != columns.end(), "no column named '" + name + "'");
    const auto index = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row[index]);
    }
    return out;
}

Stream replica_stream(std::uint64_t seed, std::uint64_t replica)
{
    return Stream(seed).split(replica);
}

namespace {

void check_row(const std::vector<double>& row, std::size_t width)
{
    require(row.size() == width, [&] {
        return "replica returned " + std::to_string(row.size()) + " values for " + std::to_string(width) + " columns";
    });
}

}  // namespace

SampleSet run_replicas_serial(const ReplicaFn& fn, std::vector<std::string> columns,
                              std::size_t replicas, std::uint64_t seed)
{
    require(replicas >= 1, "replicas must be at least 1");
    SampleSet out;
    out.columns = std::move(columns);
    out.rows.reserve(replicas);
    for (std::size_t r = 0; r < replicas; ++r) {
        Stream rng = replica_stream(seed, r);
        out.rows.push_back(fn(rng));
        check_row(out.rows.back(), out.columns.size());
    }
    return out;
}

SampleSet run_replicas(const ReplicaFn& fn, std::vector<std::string> columns,
                       std::size_t replicas, std::uint64_t seed, std::size_t workers)
{
    require(replicas >= 1, "replicas must be at least 1");
    SampleSet out;
    out.columns = std::move(columns);
    out.rows.resize(replicas);
    const int threads = workers == 0 ? omp_get_max_threads() : static_cast<int>(workers);
    std::exception_ptr failure;
    const auto count = static_cast<std::int64_t>(replicas);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t r = 0; r < count; ++r) {
        try {
            Stream rng = replica_stream(seed, static_cast<std::uint64_t>(r));
            out.rows[static_cast<std::size_t>(r)] = fn(rng);
        }
        catch (...) {
#pragma omp critical
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    for (const auto& row : out.rows) {
        check_row(row, out.columns.size());
    }
    return out;
}

std::vector<double> replicate(const std::function<double(Stream&)>& fn, std::size_t replicas,
                              std::uint64_t seed, std::size_t workers)
{
    const auto samples = run_replicas([&fn](Stream& rng) { return std::vector<double>{fn(rng)}; },
                                      {"value"}, replicas, seed, workers);
    return samples.column("value");
}

}  // namespace pclab
