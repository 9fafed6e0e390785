"""
Closed-form parameters of orthogonal polar Grassmann codes and the bounds we
check computed codes against.

"""
from scipy.special import comb


def spread_bound(r, q):
    """
    Guaranteed lower bound on the maximum size of a partial spread of Q(2r, q).

    For even q this is the exact value q^{r+1}+1. For odd q only q+1 is guaranteed
    and we never guess beyond it.

    """
    if r < 1:
        raise ValueError("spread bound needs r >= 1, got {}".format(r))
    if q % 2 == 0:
        return q ** (r + 1) + 1
    return q + 1


def mt1_distance_bound(n, k, q):
    """
    Lower bound on the minimum distance of the code of totally singular k-spaces
    for k < n:

        psi_{n-k}(q) (q^{k(n-k)} - 1) + 1

    using `spread_bound()` for psi.

    """
    if not 1 <= k < n:
        raise ValueError("the distance bound only holds for 1 <= k < n, got n={}, k={}".format(n, k))
    return spread_bound(n - k, q) * (q ** (k * (n - k)) - 1) + 1


def mt2_distance(n, q):
    """
    Exact minimum distance of the line code (k=2) for odd q: q^{4n-5} - q^{3n-4}.

    """
    if n < 2:
        raise ValueError("line codes need n >= 2, got {}".format(n))
    if q % 2 == 0:
        raise ValueError("exact line code distance is only known for odd q, got q={}".format(q))
    return q ** (4 * n - 5) - q ** (3 * n - 4)


def dual_polar_parameters(n, q):
    """
    (N, K, d) of the code of generators (k = n) for n = 2 and n = 3.

    """
    if n == 2:
        N = (q ** 2 + 1) * (q + 1)
        K = 9 if q % 2 == 0 else 10
        d = q ** 2 * (q - 1)
    elif n == 3:
        N = (q ** 3 + 1) * (q ** 2 + 1) * (q + 1)
        if q % 2 == 0:
            K = 28
            d = q ** 5 * (q - 1)
        else:
            K = 35
            d = q ** 2 * (q - 1) * (q ** 3 - 1)
    else:
        raise ValueError("dual polar code parameters are only known for n = 2, 3, got n={}".format(n))
    return N, K, d


def expected_dimension(n, k, q):
    """
    The code dimension K.

    For k < n: C(2n+1, k) for odd q, C(2n+1, k) - C(2n+1, k-2) for even q. For k = n
    the dual polar values, where known.

    :return: K, or None when no closed form is known
    """
    if not 1 <= k <= n:
        raise ValueError("k must be between 1 and n={}, got {}".format(n, k))
    if k == n:
        if n in (2, 3):
            return dual_polar_parameters(n, q)[1]
        return None
    full = comb(2 * n + 1, k, exact=True)
    if q % 2 == 0:
        return full - comb(2 * n + 1, k - 2, exact=True)
    return full


def gaussian_binomial(m, k, q):
    """ Number of k-subspaces of F_q^m """
    if not 0 <= k <= m:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def grassmann_code_parameters(n, k, q):
    """
    (N, K) of the ordinary Grassmann code of all k-subspaces of V(2n+1, q), for
    comparison. For odd q and k < n the polar code has the same dimension.

    """
    return gaussian_binomial(2 * n + 1, k, q), comb(2 * n + 1, k, exact=True)


def planes_per_line(n, q):
    """ Number of totally singular planes through a totally singular line, i.e. votes per position """
    if n < 3:
        return 0
    return (q ** (2 * (n - 2)) - 1) // (q - 1)


def correction_radius(n, q):
    """
    Number of errors anywhere in the word that local correction is guaranteed to undo
    at every position: (r - 1) // 2 with r votes per position.

    """
    r = planes_per_line(n, q)
    return max((r - 1) // 2, 0)
