#pragma once

#include <exception>
#include <mutex>

namespace rpq::detail {

/// Collects the first exception thrown inside an OpenMP loop.
class ExceptionSlot {
public:
    template <class F>
    void run(F&& f) {
        try {
            f();
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!error_) error_ = std::current_exception();
        }
    }
    void rethrow() const {
        if (error_) std::rethrow_exception(error_);
    }

private:
    std::mutex mutex_;
    std::exception_ptr error_;
};

}  // namespace rpq::detail
