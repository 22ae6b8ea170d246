#include <gtest/gtest.h>

#include "restime/dynamics.hpp"
#include "restime/errors.hpp"
#include "restime/lane.hpp"

namespace restime {
namespace {

TEST(Lane, HomogeneousLaneHasExpectedShape) {
    const Lane lane = make_homogeneous_lane(10, 0.3);
    EXPECT_EQ(lane.length(), 10);
    EXPECT_EQ(lane.transient_count(), 9);
    for (int i = 1; i < 10; ++i) {
        EXPECT_DOUBLE_EQ(lane.p(i), 0.3);
        EXPECT_DOUBLE_EQ(lane.q(i), 0.7);
    }
}

TEST(Lane, RejectsProbabilitiesOutsideOpenUnitInterval) {
    EXPECT_THROW(Lane::from_right_probabilities({0.5, 1.0}), ValidationError);
    EXPECT_THROW(Lane::from_right_probabilities({0.0}), ValidationError);
    EXPECT_THROW(Lane::from_right_probabilities({}), ValidationError);
    EXPECT_THROW(make_homogeneous_lane(1, 0.5), ValidationError);
    EXPECT_THROW(HomogeneousParams(1.2), ValidationError);
}

TEST(Lane, HomogeneousParamsDerivedQuantities) {
    const HomogeneousParams hp(0.6);
    EXPECT_DOUBLE_EQ(hp.q(), 0.4);
    EXPECT_NEAR(hp.drift(), 0.2, 1e-15);
    EXPECT_NEAR(hp.ratio(), 2.0 / 3.0, 1e-15);
    EXPECT_FALSE(hp.symmetric());
    EXPECT_TRUE(HomogeneousParams(0.5).symmetric());
}

TEST(Lane, StaticDefectShiftsOneSite) {
    const Lane lane = apply_static_defect(make_homogeneous_lane(8, 0.5), {3, 0.2});
    EXPECT_DOUBLE_EQ(lane.p(3), 0.7);
    EXPECT_DOUBLE_EQ(lane.q(3), 1.0 - 0.7);
    EXPECT_DOUBLE_EQ(lane.p(2), 0.5);
}

TEST(Lane, StaticDefectBounds) {
    const Lane base = make_homogeneous_lane(8, 0.5);
    EXPECT_THROW(apply_static_defect(base, {1, 0.1}), ValidationError);
    EXPECT_THROW(apply_static_defect(base, {7, 0.1}), ValidationError);
    EXPECT_THROW(apply_static_defect(base, {3, 0.5}), BiasOutOfRange);
    EXPECT_THROW(apply_static_defect(base, {3, -0.5}), BiasOutOfRange);
}

TEST(Lane, LengthConventions) {
    EXPECT_EQ(LengthSpec::from_length(102).boundary_index, 102);
    const LengthSpec t = LengthSpec::from_transient(101);
    EXPECT_EQ(t.boundary_index, 102);
    EXPECT_EQ(t.transient_sites(), 101);
    EXPECT_EQ(to_string(t.given), "transient");
    EXPECT_THROW(LengthSpec::from_transient(0), ValidationError);
}

TEST(Lane, JsonRoundTripIsExact) {
    const Lane lane = Lane::from_right_probabilities({0.1, 0.2345678901234567, 0.9});
    EXPECT_EQ(lane_from_json(lane_to_json(lane)), lane);
}

TEST(Lane, JsonRejectsInconsistentLength) {
    EXPECT_THROW(lane_from_json(R"({"L": 5, "p": [0.5, 0.5]})"), ValidationError);
    EXPECT_THROW(lane_from_json("not json"), ValidationError);
}

TEST(Dynamics, ValidationPerModel) {
    EXPECT_NO_THROW(validate_dynamics(IntermittentDefect{5, 0.4, 0.75}, 20));
    EXPECT_THROW(validate_dynamics(IntermittentDefect{5, 0.4, 1.5}, 20), ValidationError);
    EXPECT_THROW(validate_dynamics(RenewalDefect{5, 0.4, 0.0, 1.0}, 20), ValidationError);
    EXPECT_THROW(validate_dynamics(TriangularMovingDefect{5, 0.4, 4}, 20), ValidationError);
    EXPECT_NO_THROW(validate_dynamics(TriangularMovingDefect{5, 0.4, 3}, 20));
    EXPECT_THROW(validate_dynamics(StaticDefect{19, 0.1}, 20), ValidationError);
    EXPECT_EQ(model_name(UniformMovingDefect{0.1}), "c");
    EXPECT_DOUBLE_EQ(defect_bias(RenewalDefect{3, -0.2, 1, 1}), -0.2);
}

}  // namespace
}  // namespace restime
