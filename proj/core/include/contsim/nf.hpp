#pragma once

#include <string_view>

namespace contsim {

/// Network-function roles deployed as pods. DCCORE stands in for the
/// datacenter-resident control bundle (subscriber database, policy and
/// repository functions) that registration and session procedures consult.
enum class NFKind { AMF, SMF, UPF, DCCORE, GNB, UE, DN };

std::string_view to_string(NFKind kind);
NFKind nf_kind_from_string(std::string_view name);

}  // namespace contsim
