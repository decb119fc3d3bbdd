#pragma once

#include <cstdint>

namespace ddsim {

/// Dense node handle assigned by Topology in insertion order.
using NodeId = std::uint32_t;

constexpr NodeId kInvalidNode = static_cast<NodeId>(-1);

enum class Role { client, attacker, router, victim };

enum class PacketKind { data, routing, traceback_request };

const char* to_string(Role role);
const char* to_string(PacketKind kind);

}  // namespace ddsim
