#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "signcorr/sign.hpp"

namespace signcorr {

/// Thrown by a sign source that cannot produce the sign at some index.
class SourceError : public std::runtime_error {
public:
    SourceError(const std::string& what, std::uint64_t index)
        : std::runtime_error(what + " (index " + std::to_string(index) + ")"), index_(index)
    {
    }
    std::uint64_t index() const { return index_; }

private:
    std::uint64_t index_;
};

/// Advance-only stream n -> sgn w_n(point) for one evaluation point.
///
/// A cursor is not thread safe; use clone() to obtain an independent one.
class SignSequence {
public:
    virtual ~SignSequence() = default;

    /// Returns the sign at index() and advances by one.
    virtual Sign next() = 0;
    /// Index of the sign the next call to next() returns.
    virtual std::uint64_t index() const = 0;
    /// Repositions the cursor. Cost is O(1) when random_access(), otherwise a
    /// replay of the recurrence from n = 0.
    virtual void seek(std::uint64_t n) = 0;
    virtual bool random_access() const = 0;
    virtual std::unique_ptr<SignSequence> clone() const = 0;
    virtual std::string describe() const = 0;
};

/// Signs of sgn w_n(point) for n < N together with the indices that were
/// zero-hits.
struct SignSequenceResult {
    std::vector<Sign> signs;
    std::vector<std::uint64_t> zero_hits;
};

SignSequenceResult collect(SignSequence& seq, std::uint64_t count);

struct SignPair {
    Sign x = Sign::zero;
    Sign y = Sign::zero;
};

/// Stream n -> (sgn w_n(x), sgn w_n(y)) consumed by the estimator.
class SignPairSource {
public:
    virtual ~SignPairSource() = default;
    virtual SignPair next() = 0;
    virtual std::uint64_t index() const = 0;
    virtual void seek(std::uint64_t n) = 0;
    virtual bool random_access() const = 0;
    virtual std::unique_ptr<SignPairSource> clone() const = 0;
    virtual std::string describe() const = 0;
};

/// Pairs two single-point sequences of the same family.
class PointPairSource final : public SignPairSource {
public:
    PointPairSource(std::unique_ptr<SignSequence> x, std::unique_ptr<SignSequence> y);

    SignPair next() override { return {x_->next(), y_->next()}; }
    std::uint64_t index() const override { return x_->index(); }
    void seek(std::uint64_t n) override
    {
        x_->seek(n);
        y_->seek(n);
    }
    bool random_access() const override { return x_->random_access() && y_->random_access(); }
    std::unique_ptr<SignPairSource> clone() const override;
    std::string describe() const override;

private:
    std::unique_ptr<SignSequence> x_;
    std::unique_ptr<SignSequence> y_;
};

} // namespace signcorr
