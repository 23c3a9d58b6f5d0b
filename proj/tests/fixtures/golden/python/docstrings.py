def area(r):
    """Return the area.

    # not a comment inside a docstring
    """
    return 3.14159 * r * r  # approximation of pi is crude


def volume(r):
    '''Single-quoted docstring with a # mark.'''
    ## doubled hash marker
    ### tripled
    return 4.0  # TODO: use the real formula
