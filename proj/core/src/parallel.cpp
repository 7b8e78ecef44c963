#include <pcoh/parallel.hpp>

#include <cstdlib>
#include <string>

namespace pcoh {

std::size_t worker_count()
{
    if (const char* env = std::getenv("PCOH_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace pcoh
