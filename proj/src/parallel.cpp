#include "diskzero/parallel.hpp"

#include <cstdlib>
#include <string>

namespace diskzero {

std::size_t worker_count() {
    if (const char* env = std::getenv("DISKZERO_WORKERS")) {
        try {
            const long n = std::stol(env);
            if (n >= 1) return static_cast<std::size_t>(n);
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace diskzero
