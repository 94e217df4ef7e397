#include "listsort/list_core.hpp"

namespace listsort {

std::string_view to_string(ChainStatus status) noexcept {
    switch (status) {
    case ChainStatus::ok: return "ok";
    case ChainStatus::cycle_detected: return "cycle-detected";
    case ChainStatus::overlong: return "overlong";
    }
    return "unknown";
}

} // namespace listsort
