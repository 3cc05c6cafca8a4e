#pragma once

#include <shared_mutex>
#include <string>

#include "rsp/engine/state.hpp"
#include "rsp/wire/types.hpp"

namespace rsp::engine {

/// Thread-safe front of the engine. Reads share the state; submits take it
/// exclusively, so every operation observes a consistent state.
///
/// Each call authenticates the request credentials first.
class Provider {
 public:
  explicit Provider(StoreState state) : state_(std::move(state)) {}

  ReadTableHeadersResponse read_table_headers(const ReadTableHeadersRequest& request) const;
  ReadTableResponse read_table(const ReadTableRequest& request) const;
  SubmitResponse submit(const SubmitRequest& request);

  StoreState snapshot() const;
  std::string digest() const;

 private:
  mutable std::shared_mutex mutex_;
  StoreState state_;
};

}  // namespace rsp::engine
