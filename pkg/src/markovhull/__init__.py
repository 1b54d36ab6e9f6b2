"""Exact, certified strictly convex hulls and Markov-principle searches."""

from markovhull.errors import (
    CollinearTriple,
    DuplicatePoint,
    FuelExhausted,
    InputDegenerate,
    ParseError,
    PreconditionViolated,
    PromiseViolation,
    WitnessTooWeak,
)
from markovhull.geometry import (
    ClosedSide,
    HalfSpaceSide,
    LocatedLine,
    Point2,
    SeparationWitness,
    closed_side_oracle,
    cross,
    halfspace_classify,
    line_distance_sq,
    noncollinearity_witness,
)
from markovhull.hull import (
    ConvexityMode,
    HullCertificate,
    HullParams,
    Polygon,
    Verdict,
    brute_force_hull,
    convex_hull_constructive,
    convex_hull_oracle,
    reduction_gadget_mp,
    reduction_gadget_mpvee,
    verify_certificate,
)
from markovhull.principles import (
    Apartness,
    BinarySeq,
    Parity,
    Sign,
    SignDisjunct,
    mpvee_binary,
    sign_mp,
    sign_mpvee,
)
from markovhull.real_kernel import (
    CReal,
    Fuel,
    FuelMeter,
    Interval,
    Ordering,
    Rat,
    arith,
    cmp_resolve,
    embed,
)
