#pragma once

namespace dhecke {

/// Selects between the serial reference loop and the OpenMP kernel.
/// Both paths compute identical results; the serial path is what the
/// tests compare against.
enum class Exec { serial, parallel };

}  // namespace dhecke
