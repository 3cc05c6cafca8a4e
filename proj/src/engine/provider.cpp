#include "rsp/engine/provider.hpp"

#include <mutex>

#include "rsp/engine/auth.hpp"
#include "rsp/engine/operations.hpp"

namespace rsp::engine {

ReadTableHeadersResponse Provider::read_table_headers(const ReadTableHeadersRequest& request) const {
  std::shared_lock lock(mutex_);
  Principal principal = authenticate(state_, request.user_name, request.password);
  return ReadTableHeadersResponse{engine::read_table_headers(state_, principal, request.language)};
}

ReadTableResponse Provider::read_table(const ReadTableRequest& request) const {
  std::shared_lock lock(mutex_);
  Principal principal = authenticate(state_, request.user_name, request.password);
  return ReadTableResponse{engine::read_table(state_, principal, request)};
}

SubmitResponse Provider::submit(const SubmitRequest& request) {
  Principal principal = [&] {
    std::shared_lock lock(mutex_);
    return authenticate(state_, request.user_name, request.password);
  }();
  // Users and grants are immutable after load, so the principal stays valid
  // once the exclusive lock is taken.
  std::unique_lock lock(mutex_);
  return engine::submit(state_, principal, request);
}

StoreState Provider::snapshot() const {
  std::shared_lock lock(mutex_);
  return state_;
}

std::string Provider::digest() const {
  std::shared_lock lock(mutex_);
  return state_digest(state_);
}

}  // namespace rsp::engine
