# Integrate with a fixed step.
# TODO: adaptive step size
def step(x):
    return x  # the physics here is not correct


# plain explanation of the return value
