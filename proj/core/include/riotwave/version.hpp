#pragma once

#define RIOTWAVE_VERSION "0.1.0"

namespace riotwave {

inline const char* version() { return RIOTWAVE_VERSION; }

}  // namespace riotwave
