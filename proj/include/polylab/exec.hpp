#pragma once

namespace polylab {

/// Selects the serial reference loop or the OpenMP kernel for the
/// data-parallel enumerations. Both produce identical results.
enum class Exec { serial, parallel };

}  // namespace polylab
