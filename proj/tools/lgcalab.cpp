// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "lgcalab/cli.hpp"

int main(int argc, char** argv) {
  return lgcalab::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
