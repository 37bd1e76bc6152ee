#include <doctest.h>

#include "ambiclass/filtration.hpp"

using namespace ambiclass;

TEST_SUITE("filtration")
{
    TEST_CASE("worked example D = 328")
    {
        FiltrationReport rep = compute_filtration(make_field(82));
        CHECK(rep.order_sequence == std::vector<Int>{2, 2});
        CHECK(rep.length == 2);
        CHECK(rep.structure.elementary_divisors == std::vector<Int>{4});
        CHECK(rep.delta_sequence == std::vector<long>{0, 0});
        CHECK(rep.redei_rank == 0);
        CHECK(rep.four_rank == 1);
    }

    TEST_CASE("degenerate and elementary cases")
    {
        FiltrationReport triv = compute_filtration(make_field(-1));
        CHECK(triv.order_sequence.empty());
        CHECK(triv.length == 0);
        CHECK(triv.structure.order == 1);

        FiltrationReport rep = compute_filtration(make_field(-21));  // D = -84
        CHECK(rep.order_sequence == std::vector<Int>{4});
        CHECK(rep.length == 1);
        CHECK(rep.structure.elementary_divisors == std::vector<Int>{2, 2});
        CHECK(rep.redei_rank == 2);
        CHECK(rep.four_rank == 0);
    }

    TEST_CASE("redei matrix basics")
    {
        RedeiMatrix m = redei_matrix(make_field(82));
        CHECK(m.rank == 0);
        CHECK(m.four_rank == 1);
        RedeiMatrix m2 = redei_matrix(make_field(-21));
        CHECK(m2.rank == 2);
        CHECK(m2.four_rank == 0);
        RedeiMatrix m3 = redei_matrix(make_field(2));  // t = 1
        CHECK(m3.rank == 0);
        CHECK(m3.four_rank == 0);
        CHECK(m3.rows.size() == 1);
    }

    TEST_CASE("agrees with the oracle on a window")
    {
        for (const Int& D : fundamental_discriminants(-600, 600)) {
            QuadraticField k = field_from_discriminant(D);
            FiltrationReport rep = compute_filtration(k);
            auto sylow = FormClassGroup::get(D)->structure(Sense::narrow).sylow(2);
            CHECK(rep.structure.elementary_divisors == sylow);
            // order product equals the 2-part of h+
            Int prod = 1;
            for (const Int& o : rep.order_sequence) prod *= o;
            Int h = FormClassGroup::get(D)->class_number(Sense::narrow);
            Int two_part = 1;
            while (h % 2 == 0) {
                two_part *= 2;
                h /= 2;
            }
            CHECK(prod == two_part);
            // non-increasing orders, each dividing the previous
            for (size_t i = 0; i + 1 < rep.order_sequence.size(); ++i) {
                CHECK(rep.order_sequence[i] >= rep.order_sequence[i + 1]);
                CHECK(rep.order_sequence[i] % rep.order_sequence[i + 1] == 0);
            }
            // conjugate partition consistency
            long sum_nj = 0;
            for (long nj : rep.divisors_nj) sum_nj += nj;
            long sum_ranks = 0;
            for (const Int& o : rep.order_sequence) {
                Int v = o;
                while (v > 1) {
                    v /= 2;
                    ++sum_ranks;
                }
            }
            CHECK(sum_nj == sum_ranks);
        }
    }

    TEST_CASE("four rank from the redei matrix matches the oracle")
    {
        for (const Int& D : fundamental_discriminants(-400, 400)) {
            QuadraticField k = field_from_discriminant(D);
            RedeiMatrix m = redei_matrix(k);
            long four_rank_oracle = 0;
            for (const Int& d : FormClassGroup::get(D)->structure(Sense::narrow).sylow(2))
                if (d % 4 == 0) ++four_rank_oracle;
            CHECK(m.four_rank == four_rank_oracle);
        }
    }
}
