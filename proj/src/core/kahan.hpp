#ifndef GQV_CORE_KAHAN_HPP_
#define GQV_CORE_KAHAN_HPP_

namespace gqv {

// Neumaier variant of compensated summation: the correction also tracks
// the case |term| > |sum|.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

}  // namespace gqv

#endif  // GQV_CORE_KAHAN_HPP_
