#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace pghi::detail
{
    namespace
    {
        class PlanCache
        {
        public:
            ~PlanCache()
            {
                for (auto& [key, plan] : m_plans)
                {
                    fftw_destroy_plan(plan);
                }
            }

            fftw_plan get(std::size_t n, int sign)
            {
                std::lock_guard lock(m_mutex);
                const auto key = std::make_pair(n, sign);
                if (auto it = m_plans.find(key); it != m_plans.end())
                {
                    return it->second;
                }
                // Planned on scratch memory; executed later through the
                // new-array interface, hence FFTW_UNALIGNED.
                std::vector<fftw_complex> scratch(n);
                fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), scratch.data(), scratch.data(), sign,
                                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
                m_plans.emplace(key, plan);
                return plan;
            }

        private:
            std::mutex m_mutex;
            std::map<std::pair<std::size_t, int>, fftw_plan> m_plans;
        };

        PlanCache& cache()
        {
            static PlanCache instance;
            return instance;
        }

        void run(std::span<std::complex<double>> buf, int sign)
        {
            if (buf.size() <= 1)
            {
                return;
            }
            auto* data = reinterpret_cast<fftw_complex*>(buf.data());
            fftw_execute_dft(cache().get(buf.size(), sign), data, data);
        }
    }  // namespace

    void fft_forward(std::span<std::complex<double>> buf) { run(buf, FFTW_FORWARD); }

    void fft_backward(std::span<std::complex<double>> buf) { run(buf, FFTW_BACKWARD); }
}  // namespace pghi::detail
