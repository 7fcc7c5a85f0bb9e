#pragma once

namespace spikesr {

/// Serial is the reference path; OpenMP must reproduce it bit for bit.
enum class Execution { Serial, OpenMP };

/// OpenMP when the library was built with it, Serial otherwise.
Execution default_execution() noexcept;

/// Threads the OpenMP path would use (1 without OpenMP).
int available_threads() noexcept;

}  // namespace spikesr
