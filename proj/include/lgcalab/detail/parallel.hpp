// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace lgcalab::detail {

template <typename Body>
void parallel_rows(int rows, int workers, Body&& body) {
  workers = std::clamp(workers, 1, std::max(rows, 1));
  if (workers == 1) {
    body(0, rows);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  const int chunk = (rows + workers - 1) / workers;
  for (int w = 1; w < workers; ++w) {
    const int begin = std::min(rows, w * chunk);
    const int end = std::min(rows, begin + chunk);
    if (begin < end) pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  body(0, std::min(rows, chunk));
}

}  // namespace lgcalab::detail
