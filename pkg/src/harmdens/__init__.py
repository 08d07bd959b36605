"""Volume-density asymptotics of central harmonic model spaces."""
