#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace covercount {

// Half-open slice of an enumeration index space.
struct IndexRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;

    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

// Splits [begin, end) into at most `parts` contiguous non-empty ranges.
inline std::vector<IndexRange> split_range(std::uint64_t begin, std::uint64_t end,
                                           int parts) {
    std::vector<IndexRange> out;
    if (end <= begin || parts < 1) return out;
    const std::uint64_t total = end - begin;
    const std::uint64_t n = std::min<std::uint64_t>(static_cast<std::uint64_t>(parts), total);
    std::uint64_t pos = begin;
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t len = total / n + (i < total % n ? 1 : 0);
        out.push_back({pos, pos + len});
        pos += len;
    }
    return out;
}

// Runs `worker` over each slice (one thread per slice when jobs > 1) and
// folds the partial results in ascending range order, so the result does
// not depend on scheduling. Worker must be safe to run concurrently; the
// first worker exception is rethrown after all threads finish.
template <class Result, class Worker, class Merge>
Result parallel_reduce(std::uint64_t begin, std::uint64_t end, int jobs,
                       Worker worker, Merge merge, Result init = Result{}) {
    const auto ranges = split_range(begin, end, jobs < 1 ? 1 : jobs);
    Result acc = std::move(init);
    if (ranges.size() <= 1) {
        for (const auto& r : ranges) merge(acc, worker(r));
        return acc;
    }
    std::vector<Result> partial(ranges.size());
    std::vector<std::exception_ptr> errors(ranges.size());
    std::vector<std::thread> pool;
    pool.reserve(ranges.size());
    for (size_t i = 0; i < ranges.size(); ++i)
        pool.emplace_back([&, i] {
            try {
                partial[i] = worker(ranges[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (auto& p : partial) merge(acc, std::move(p));
    return acc;
}

}  // namespace covercount
