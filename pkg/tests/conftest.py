import pytest

from caretcalc import BallIndex, GeneratingSet, ball

X1 = GeneratingSet.of([0, 1])
X2 = GeneratingSet.of([0, 1, 2])
X3 = GeneratingSet.of([0, 1, 2, 3])


@pytest.fixture(scope="session")
def ball_x1_r8():
    return ball(X1, 8)


@pytest.fixture(scope="session")
def ball_x2_r7():
    return ball(X2, 7)


@pytest.fixture(scope="session")
def ball_x3_r6():
    return ball(X3, 6)


@pytest.fixture(scope="session")
def ball_x2_r6(ball_x2_r7):
    # restriction of the radius-7 index; avoids a second enumeration
    table = {
        enc: row for enc, row in ball_x2_r7.table.items() if row[0] <= 6
    }
    return BallIndex(gens=X2, radius=6, table=table)
