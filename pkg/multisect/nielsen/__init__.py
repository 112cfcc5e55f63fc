from multisect.nielsen.certificates import (
    CertificateVerdict,
    NielsenCertificate,
    QuotientWitness,
    distinguish,
    flip_check,
    format_certificate,
    search_moves,
    spine_tuple,
)
from multisect.nielsen.orbits import OrbitPartition, determinant_invariant, orbit_enumerate
from multisect.nielsen.tuples import (
    Conjugation,
    GeneratingTuple,
    Move,
    nielsen_move,
    word_move,
)
