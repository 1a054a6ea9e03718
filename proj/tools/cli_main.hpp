#pragma once

// Entry point shared by the command-line binary and the in-process CLI tests.

namespace dynsched {

int cli_main(int argc, const char* const* argv);

}  // namespace dynsched
