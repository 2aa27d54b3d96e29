#include "sample_pool.hpp"

#include <algorithm>

#include "errors.hpp"

namespace qrdom {

SamplePool::SamplePool(const SweepMaterial& material, SweepOptions options,
                       std::vector<CompiledFunctional> functionals, unsigned workers)
    : material_(material), functionals_(std::move(functionals)), workers_(std::max(1u, workers)) {
  for (unsigned w = 0; w < workers_; ++w) {
    states_.push_back(std::make_unique<WorkerState>(WorkerState{QuadrupleSweeper(material, options), {}}));
  }
  const std::size_t window = workers_ == 1 ? 1 : 2 * static_cast<std::size_t>(workers_);
  slots_.resize(window);
  for (auto& s : slots_) {
    s.scalar.assign(material.grid.cells(), 0.0);
    s.values.assign(functionals_.size(), 0.0);
  }
  if (workers_ > 1) {
    for (unsigned w = 0; w < workers_; ++w) {
      threads_.emplace_back([this, w] { worker_loop(w); });
    }
  }
}

SamplePool::~SamplePool() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  work_cv_.notify_all();
  threads_.clear();  // joins
}

void SamplePool::compute(WorkerState& state, std::uint64_t task, Slot& slot) {
  const DirectionQuadruple d = (*direction_)(task);
  state.sweeper.solve(d, source_, state.solution);
  sample_scalar_flux(state.solution, slot.scalar);
  for (std::size_t f = 0; f < functionals_.size(); ++f) {
    slot.values[f] = functionals_[f](slot.scalar);
  }
}

void SamplePool::worker_loop(std::size_t id) {
  WorkerState& state = *states_[id];
  std::unique_lock lock(mutex_);
  for (;;) {
    work_cv_.wait(lock, [&] {
      return stop_ || (!error_ && next_dispatch_ < end_ && !free_slots_.empty());
    });
    if (stop_) return;
    const std::uint64_t task = next_dispatch_++;
    const std::size_t slot = free_slots_.back();
    free_slots_.pop_back();
    ++in_flight_;
    lock.unlock();

    std::exception_ptr failure;
    try {
      compute(state, task, slots_[slot]);
    } catch (...) {
      failure = std::current_exception();
    }

    lock.lock();
    --in_flight_;
    if (failure) {
      if (!error_) error_ = failure;
      free_slots_.push_back(slot);
    } else {
      ready_.emplace(task, slot);
    }
    done_cv_.notify_all();
  }
}

void SamplePool::run_range(std::span<const double> source, std::uint64_t count,
                           const DirectionFn& direction, const Consumer& consume) {
  if (source.size() != material_.grid.cells()) {
    throw ContractViolation("SamplePool: source size does not match the grid");
  }
  source_ = source;
  direction_ = &direction;

  if (workers_ == 1) {
    Slot& slot = slots_.front();
    for (std::uint64_t task = 0; task < count; ++task) {
      compute(*states_.front(), task, slot);
      consume(task, slot.scalar, slot.values);
    }
    return;
  }

  {
    std::lock_guard lock(mutex_);
    end_ = count;
    next_dispatch_ = 0;
    ready_.clear();
    error_ = nullptr;
    free_slots_.clear();
    for (std::size_t s = slots_.size(); s-- > 0;) free_slots_.push_back(s);
  }
  work_cv_.notify_all();

  std::exception_ptr failure;
  std::uint64_t next_consume = 0;
  std::unique_lock lock(mutex_);
  while (next_consume < count) {
    done_cv_.wait(lock, [&] { return error_ || ready_.contains(next_consume); });
    if (error_) break;
    const std::size_t slot = ready_.at(next_consume);
    ready_.erase(next_consume);
    lock.unlock();
    try {
      consume(next_consume, slots_[slot].scalar, slots_[slot].values);
    } catch (...) {
      failure = std::current_exception();
    }
    lock.lock();
    free_slots_.push_back(slot);
    work_cv_.notify_all();
    if (failure) {
      error_ = failure;
      break;
    }
    ++next_consume;
  }
  // Stop dispatching and drain whatever is still running.
  end_ = next_dispatch_;
  done_cv_.wait(lock, [&] { return in_flight_ == 0; });
  const std::exception_ptr err = error_;
  error_ = nullptr;
  ready_.clear();
  end_ = 0;
  next_dispatch_ = 0;
  lock.unlock();
  if (err) std::rethrow_exception(err);
}

}  // namespace qrdom
