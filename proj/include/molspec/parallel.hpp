#ifndef MOLSPEC_PARALLEL_HPP
#define MOLSPEC_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace molspec {

/// Calls body(k) for k = 0 .. count-1 on up to `jobs` threads, worker w
/// taking k = w, w + jobs, ... The first exception (by worker) is rethrown.
template <typename Body>
void parallel_for(int count, int jobs, Body&& body) {
    if (count <= 0) {
        return;
    }
    const int workers = std::clamp(jobs, 1, count);
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
    auto work = [&](int first) {
        try {
            for (int k = first; k < count; k += workers) {
                body(k);
            }
        } catch (...) {
            failures[static_cast<std::size_t>(first)] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back(work, w);
        }
    }
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
}

} // namespace molspec

#endif // MOLSPEC_PARALLEL_HPP
