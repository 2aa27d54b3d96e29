#pragma once

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "functionals.hpp"
#include "sweep.hpp"

namespace qrdom {

/// Coordinator/worker engine for quadruple solves against a frozen source.
///
/// Tasks are numbered 0..count-1 within a range. Workers pull the next task
/// number, solve the quadruple, reduce it to the sample scalar flux and
/// evaluate the registered functionals. The coordinator (the caller of
/// run_range) hands results to the consumer strictly in task order, so every
/// reduction is independent of the worker count. At most 2 * workers results
/// are in flight.
class SamplePool {
 public:
  using DirectionFn = std::function<DirectionQuadruple(std::uint64_t task)>;
  using Consumer = std::function<void(std::uint64_t task, std::span<const double> scalar_flux,
                                      std::span<const double> functional_values)>;

  SamplePool(const SweepMaterial& material, SweepOptions options,
             std::vector<CompiledFunctional> functionals, unsigned workers);
  ~SamplePool();

  SamplePool(const SamplePool&) = delete;
  SamplePool& operator=(const SamplePool&) = delete;

  /// Solves tasks [0, count) and feeds the consumer in order. Rethrows the
  /// first worker exception after in-flight work drains.
  void run_range(std::span<const double> source, std::uint64_t count, const DirectionFn& direction,
                 const Consumer& consume);

  unsigned workers() const { return workers_; }

 private:
  struct Slot {
    std::vector<double> scalar;
    std::vector<double> values;
  };
  struct WorkerState {
    QuadrupleSweeper sweeper;
    QuadrupleSolution solution;
  };

  void compute(WorkerState& state, std::uint64_t task, Slot& slot);
  void worker_loop(std::size_t id);

  const SweepMaterial& material_;
  std::vector<CompiledFunctional> functionals_;
  unsigned workers_;
  std::vector<std::unique_ptr<WorkerState>> states_;
  std::vector<Slot> slots_;

  // Job state, guarded by mutex_.
  std::mutex mutex_;
  std::condition_variable work_cv_;
  std::condition_variable done_cv_;
  bool stop_ = false;
  std::span<const double> source_;
  const DirectionFn* direction_ = nullptr;
  std::uint64_t end_ = 0;
  std::uint64_t next_dispatch_ = 0;
  std::vector<std::size_t> free_slots_;
  std::map<std::uint64_t, std::size_t> ready_;
  std::size_t in_flight_ = 0;
  std::exception_ptr error_;

  std::vector<std::jthread> threads_;
};

}  // namespace qrdom
