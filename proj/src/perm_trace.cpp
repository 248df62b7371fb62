#include "racah/perm_trace.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <future>
#include <map>

#include "racah/tensor.hpp"

namespace racah {

double antisym_trace_cost(int q, int dim, bool real_path) {
  // tree nodes ~ e * (q-1)!, each an interior dim^3 product; complex
  // arithmetic costs ~6 real mul-adds per entry, real ~2
  const double nodes = 2.7182818 * static_cast<double>(factorial(q - 1));
  const double per = static_cast<double>(dim) * dim * dim *
                     (real_path ? 2.0 : 6.0);
  return nodes * per;
}

namespace {

template <typename Mat>
struct DfsContext {
  const std::vector<Mat>* mats;
  std::vector<Mat> prefix;  // prefix[d] = product of d+1 factors
  std::vector<int> remaining;

  typename Mat::Scalar run_branch(int first_pick) {
    // pins mats[0]; consumes remaining[first_pick] as the second factor
    const int q1 = static_cast<int>(remaining.size());
    prefix[1].noalias() = prefix[0] * (*mats)[remaining[first_pick]];
    std::vector<int> rem;
    rem.reserve(q1 - 1);
    for (int i = 0; i < q1; ++i)
      if (i != first_pick) rem.push_back(remaining[i]);
    int sign = (first_pick % 2 == 0) ? 1 : -1;
    return static_cast<typename Mat::Scalar>(sign) * walk(1, rem);
  }

  typename Mat::Scalar walk(int depth, std::vector<int>& rem) {
    using Scalar = typename Mat::Scalar;
    const int left = static_cast<int>(rem.size());
    if (left == 1) {
      const Mat& last = (*mats)[rem[0]];
      return (prefix[depth].transpose().array() * last.array()).sum();
    }
    Scalar acc{};
    for (int i = 0; i < left; ++i) {
      const int pick = rem[i];
      prefix[depth + 1].noalias() = prefix[depth] * (*mats)[pick];
      rem.erase(rem.begin() + i);
      Scalar sub = walk(depth + 1, rem);
      rem.insert(rem.begin() + i, pick);
      if (i % 2 == 0)
        acc += sub;
      else
        acc -= sub;
    }
    return acc;
  }
};

template <typename Mat>
Complex antisym_core(const std::vector<Mat>& mats, const PermTraceOptions& opt,
                     Complex scale) {
  const int q = static_cast<int>(mats.size());
  const int dim = static_cast<int>(mats[0].rows());

  std::map<int, Complex> done;
  std::ofstream ck_out;
  if (!opt.checkpoint_file.empty()) {
    std::ifstream in(opt.checkpoint_file);
    int b;
    double re, im;
    while (in >> b >> re >> im) done[b] = Complex(re, im);
    ck_out.open(opt.checkpoint_file, std::ios::app);
    ck_out << std::setprecision(17);
  }

  auto branch_value = [&](int b) -> Complex {
    DfsContext<Mat> ctx;
    ctx.mats = &mats;
    ctx.prefix.assign(q, Mat(dim, dim));
    ctx.prefix[0] = mats[0];
    ctx.remaining.resize(q - 1);
    for (int i = 0; i < q - 1; ++i) ctx.remaining[i] = i + 1;
    auto v = ctx.run_branch(b);
    return Complex(v);
  };

  const int nbranch = q - 1;
  std::vector<Complex> partials(nbranch);
  std::vector<int> todo;
  for (int b = 0; b < nbranch; ++b) {
    auto it = done.find(b);
    if (it != done.end())
      partials[b] = it->second;
    else
      todo.push_back(b);
  }

  if (opt.threads > 1 && todo.size() > 1) {
    std::vector<std::future<Complex>> futs;
    futs.reserve(todo.size());
    for (int b : todo)
      futs.push_back(std::async(std::launch::async, branch_value, b));
    for (std::size_t i = 0; i < todo.size(); ++i) {
      partials[todo[i]] = futs[i].get();
      if (ck_out)
        ck_out << todo[i] << ' ' << partials[todo[i]].real() << ' '
               << partials[todo[i]].imag() << '\n'
               << std::flush;
    }
  } else {
    for (int b : todo) {
      partials[b] = branch_value(b);
      if (ck_out)
        ck_out << b << ' ' << partials[b].real() << ' ' << partials[b].imag()
               << '\n'
               << std::flush;
    }
  }

  Complex total = 0.0;
  for (const auto& p : partials) total += p;
  return scale * total / static_cast<double>(factorial(q - 1));
}

}  // namespace

Complex antisym_product_trace(std::span<const CMatrix> mats,
                              const PermTraceOptions& opt) {
  const int q = static_cast<int>(mats.size());
  if (q < 1 || q % 2 == 0)
    throw DomainError("antisym_product_trace: need an odd factor count");
  if (q == 1) return mats[0].trace();
  const int dim = static_cast<int>(mats[0].rows());
  for (const auto& m : mats)
    if (m.rows() != dim || m.cols() != dim)
      throw DimensionError("antisym_product_trace: inconsistent shapes");

  // purely real / purely imaginary detection for the real-arithmetic path
  double max_re = 0.0, max_im = 0.0, max_all = 0.0;
  for (const auto& m : mats) {
    max_re = std::max(max_re, m.real().cwiseAbs().maxCoeff());
    max_im = std::max(max_im, m.imag().cwiseAbs().maxCoeff());
  }
  max_all = std::max(max_re, max_im);
  const double eps = 1e-14 * max_all;
  const bool pure_real = max_im <= eps;
  const bool pure_imag = max_re <= eps;

  const double cost = antisym_trace_cost(q, dim, pure_real || pure_imag);
  if (cost > opt.flop_cap)
    throw CapExceeded("antisym_product_trace: estimated " +
                      std::to_string(cost) + " flops exceeds cap " +
                      std::to_string(opt.flop_cap));

  if (pure_real || pure_imag) {
    std::vector<RMatrix> rmats;
    rmats.reserve(q);
    for (const auto& m : mats)
      rmats.push_back(pure_real ? RMatrix(m.real()) : RMatrix(m.imag()));
    // M_s = i^p B_s with p = 0 or 1; product of q factors scales by i^(p*q)
    Complex scale = 1.0;
    if (pure_imag) {
      switch (q % 4) {
        case 0: scale = 1.0; break;
        case 1: scale = kImag; break;
        case 2: scale = -1.0; break;
        case 3: scale = -kImag; break;
      }
    }
    return antisym_core(rmats, opt, scale);
  }
  std::vector<CMatrix> cmats(mats.begin(), mats.end());
  return antisym_core(cmats, opt, Complex(1.0));
}

}  // namespace racah
