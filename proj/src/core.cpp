#include "powervp/core.hpp"

#include "powervp/errors.hpp"

namespace powervp {

const char* to_string(PowerState s) {
    switch (s) {
        case PowerState::SleepWait: return "SLEEP_WAIT";
        case PowerState::Active: return "ACTIVE";
        case PowerState::ClusterActive: return "CLUSTER_ACTIVE";
    }
    return "UNKNOWN";
}

PowerState power_state_from_string(const std::string& s) {
    if (s == "SLEEP_WAIT") return PowerState::SleepWait;
    if (s == "ACTIVE") return PowerState::Active;
    if (s == "CLUSTER_ACTIVE") return PowerState::ClusterActive;
    throw UnknownState("unknown core power state '" + s + "'");
}

}  // namespace powervp
