#include "signcorr/sign_sequence.hpp"

namespace signcorr {

SignSequenceResult collect(SignSequence& seq, std::uint64_t count)
{
    SignSequenceResult out;
    out.signs.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t n = seq.index();
        Sign s = seq.next();
        if (s == Sign::zero) out.zero_hits.push_back(n);
        out.signs.push_back(s);
    }
    return out;
}

PointPairSource::PointPairSource(std::unique_ptr<SignSequence> x, std::unique_ptr<SignSequence> y)
    : x_(std::move(x)), y_(std::move(y))
{
    if (!x_ || !y_) throw std::invalid_argument("PointPairSource: null sequence");
    if (x_->index() != y_->index()) y_->seek(x_->index());
}

std::unique_ptr<SignPairSource> PointPairSource::clone() const
{
    return std::make_unique<PointPairSource>(x_->clone(), y_->clone());
}

std::string PointPairSource::describe() const
{
    return x_->describe() + " vs " + y_->describe();
}

} // namespace signcorr
