"""zcgw: a desk-scale zero-click-resistant virtual smartphone gateway.

Chat applications run as isolated sandboxed instances on a server. Clients
never receive message bytes; they receive rendered screen pixels over a
binary streaming protocol and send input events back. Inbound SMS traffic
enters through a policy-enforcing gateway, and every instance is
periodically reset to a pristine snapshot.
"""

__version__ = "0.1.0"
